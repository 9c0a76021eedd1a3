import unittest

import torch
from parameterized import parameterized

from domain.adimage.ad_image import ImageKind
from domain.model.denoiser import Denoiser, image_configs
from domain.model.row_column_transformer import init_model
from domain.numerics.ops import masked_mse
from domain.numerics.rng import create_rng
from tests.domain.row_column_transformer_test import model_inputs
from tests.fixtures import tiny_model_config


def make_denoiser(stitching, seed=0):
    rng = create_rng(seed)
    return Denoiser({name: init_model(config, rng)
                     for name, config in image_configs(tiny_model_config(), stitching).items()})


class ImageConfigsTests(unittest.TestCase):
    def test_stitched(self):
        configs = image_configs(tiny_model_config(), True)
        self.assertEqual(list(configs), ['combined'])
        self.assertEqual(configs['combined'].image_width, 7)

    def test_separate(self):
        configs = image_configs(tiny_model_config(), False)
        self.assertEqual(list(configs), ['action', 'start', 'end'])
        self.assertEqual([c.image_width for c in configs.values()], [3, 2, 2])
        self.assertEqual(configs['start'].image_kind, ImageKind.START)
        self.assertEqual(configs['start'].token_count, 2 + 4 + 1)


class DenoiserTests(unittest.TestCase):
    @parameterized.expand([('stitched', True), ('separate', False)])
    def test_output_covers_the_combined_image(self, _, stitching):
        denoiser = make_denoiser(stitching)
        self.assertEqual(denoiser.stitched, stitching)
        self.assertEqual(denoiser.blocks, ((0, 3), (3, 2), (5, 2)))

        config = tiny_model_config().model_copy(update={'image_kind': ImageKind.COMBINED})
        output = denoiser(*model_inputs(config, 6, batch=2))
        self.assertEqual(tuple(output.shape), (2, 6, 7))
        for offset, width in denoiser.blocks:
            sums = output[..., offset:offset + width].sum(dim=-1)
            self.assertTrue(torch.allclose(sums, torch.ones_like(sums), rtol=0, atol=1e-12))

    def test_separate_models_see_their_own_columns(self):
        denoiser = make_denoiser(False)
        config = tiny_model_config().model_copy(update={'image_kind': ImageKind.COMBINED})
        x_t, features, step, mask = model_inputs(config, 6)
        changed = x_t.clone()
        changed[..., 3:5] = torch.tensor([0.9, 0.1], dtype=torch.float64)

        difference = (denoiser(changed, features, step, mask) - denoiser(x_t, features, step, mask)).abs()
        self.assertEqual(difference[..., :3].max().item(), 0.0)
        self.assertEqual(difference[..., 5:].max().item(), 0.0)
        self.assertGreater(difference[..., 3:5].max().item(), 0.0)

    def test_separate_loss_sums_image_losses(self):
        denoiser = make_denoiser(False)
        prediction = torch.rand(2, 5, 7, dtype=torch.float64)
        target = torch.rand(2, 5, 7, dtype=torch.float64)
        mask = torch.ones(2, 5, dtype=torch.bool)
        expected = sum(masked_mse(prediction[..., s], target[..., s], mask)
                       for s in (slice(0, 3), slice(3, 5), slice(5, 7)))
        self.assertAlmostEqual(denoiser.loss(prediction, target, mask).item(), expected.item(), places=12)

    def test_stitched_loss(self):
        denoiser = make_denoiser(True)
        prediction = torch.rand(1, 4, 7, dtype=torch.float64)
        target = torch.rand(1, 4, 7, dtype=torch.float64)
        mask = torch.ones(1, 4, dtype=torch.bool)
        self.assertEqual(denoiser.loss(prediction, target, mask).item(),
                         masked_mse(prediction, target, mask).item())

    def test_parameter_names(self):
        names = list(make_denoiser(False).named_parameters())
        self.assertTrue(names[0].startswith('action.'))
        self.assertTrue(any(name.startswith('start.blocks.0.') for name in names))
        self.assertTrue(any(name.startswith('end.head.') for name in names))
        self.assertEqual(len(names), len(set(names)))


if __name__ == '__main__':
    unittest.main()
