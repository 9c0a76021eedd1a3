import argparse
import sys

import numpy as np

from domain.adimage.ad_image import stitch
from domain.adimage.encoding import encode_ground_truth
from domain.config.evaluation import default_thresholds
from domain.diffusion.diagnostics import drift_table, format_drift_table
from domain.diffusion.schedule import ScheduleConfig, schedule_from_config
from domain.errors.error_handling import handle_error
from domain.evaluation.eval_report import map_report, format_report_table
from domain.inference.action_instance import ActionInstance, ground_truth_instances
from domain.inference.decode_config import DecodeConfig
from domain.inference.detection import detect_videos
from domain.inference.reverse_chain import reverse_chain
from domain.logging.app_logging import configure_logging
from domain.numerics.rng import Stream, derive_rng
from domain.synthdata.synth_config import SynthConfig
from domain.training.train_config import TrainConfig
from domain.training.trainer import train, resume_training, denoiser_from_checkpoint
from infrastructure.checkpoint_store import save_checkpoint, load_checkpoint
from infrastructure.dataset_store import gen_dataset, load_dataset, read_annotations, read_manifest, read_json, \
    write_json
from infrastructure.image_render import write_pgm
from infrastructure.jsonl_store import write_jsonl, append_jsonl, read_jsonl

logger = configure_logging(__name__)

SPLITS = ('train', 'test', 'all')


def float_list(text):
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma separated numbers, got "{text}"')


def int_list(text):
    try:
        return [int(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma separated integers, got "{text}"')


def init_argparse():
    """
    Builds the parser of the application, one subcommand per pipeline stage
    :return: The argument parser
    """
    parser = argparse.ArgumentParser(
        prog='adidiff',
        description='Temporal action detection by discrete diffusion over AD images'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    synth = subparsers.add_parser('synth', help='generate a synthetic feature dataset')
    synth.add_argument('--config', help='SynthConfig JSON file')
    synth.add_argument('--out', required=True, help='dataset directory')
    synth.add_argument('--seed', type=int)

    train_parser = subparsers.add_parser('train', help='train the denoiser')
    train_parser.add_argument('--data', required=True, help='dataset directory')
    train_parser.add_argument('--out', required=True, help='checkpoint file')
    train_parser.add_argument('--config', help='TrainConfig JSON file')
    train_parser.add_argument('--seed', type=int)
    train_parser.add_argument('--metrics', help='line-delimited JSON metrics file, defaults to <out>.metrics.jsonl')
    train_parser.add_argument('--resume', help='continue from this checkpoint')
    train_parser.add_argument('--quiet', action='store_true', help='hide the progress bars')

    detect = subparsers.add_parser('detect', help='detect actions with a trained checkpoint')
    detect.add_argument('--ckpt', required=True)
    detect.add_argument('--data', required=True)
    detect.add_argument('--out', required=True, help='line-delimited JSON detections')
    detect.add_argument('--config', help='DecodeConfig JSON file')
    detect.add_argument('--split', choices=SPLITS, default='test')
    detect.add_argument('--seed', type=int, default=0)
    detect.add_argument('--jobs', type=int, default=1)
    detect.add_argument('--samples', type=int, help='reverse chains per video')
    detect.add_argument('--threshold', type=float, help='boundary threshold')

    evaluate = subparsers.add_parser('eval', help='compute mAP at tIoU thresholds')
    evaluate.add_argument('--preds', required=True)
    evaluate.add_argument('--data', required=True)
    evaluate.add_argument('--thresholds', type=float_list, default=list(default_thresholds))
    evaluate.add_argument('--split', choices=SPLITS, default='test')
    evaluate.add_argument('--report', help='also write the report as JSON')

    render = subparsers.add_parser('render', help='write an AD image as a grayscale PGM')
    source = render.add_mutually_exclusive_group(required=True)
    source.add_argument('--image-from', dest='image_from', metavar='CKPT', help='checkpoint to run on --video')
    source.add_argument('--gt', metavar='VIDEO', help='render the ground truth of this video')
    render.add_argument('--video')
    render.add_argument('--data', required=True)
    render.add_argument('--out', required=True)
    render.add_argument('--seed', type=int, default=0)
    render.add_argument('--samples', type=int, default=1)
    render.add_argument('--scale', type=int, default=4)

    demo = subparsers.add_parser('diffuse-demo', help='print forward process drift checks')
    demo.add_argument('--t-list', dest='t_list', type=int_list, default=[1, 10, 25, 50])
    demo.add_argument('--samples', type=int, default=10000)
    demo.add_argument('--classes', type=int, default=6)
    demo.add_argument('--config', help='ScheduleConfig JSON file')
    demo.add_argument('--seed', type=int, default=0)

    return parser


def parse_args(argv):
    """
    Parses the command line. Usage errors exit with code 2.
    :param argv: The arguments without the program name
    :return: The parsed command
    """
    parser = init_argparse()
    args = parser.parse_args(argv)
    if args.command == 'render' and args.image_from and not args.video:
        parser.error('--image-from requires --video')
    if args.command == 'detect' and args.jobs < 1:
        parser.error('--jobs must be at least 1')
    return args


def load_config(path, model):
    return model.model_validate(read_json(path)) if path else model()


def with_seed(config, seed):
    return config.model_copy(update={'seed': seed}) if seed is not None else config


def run_synth(args):
    config = with_seed(load_config(args.config, SynthConfig), args.seed)
    manifest = gen_dataset(args.out, config)
    print(f'{len(manifest.videos)} videos ({len(manifest.train)} train, {len(manifest.test)} test) in {args.out}')


def run_train(args):
    dataset, _ = load_dataset(args.data)
    metrics_path = args.metrics or args.out + '.metrics.jsonl'

    def save_periodic(checkpoint):
        save_checkpoint(f'{args.out}.epoch{checkpoint.epoch:04d}', checkpoint)

    def record_epoch(metrics):
        append_jsonl(metrics_path, metrics)

    if args.resume:
        checkpoint = resume_training(load_checkpoint(args.resume), dataset, record_epoch, save_periodic,
                                     not args.quiet)
    else:
        config = with_seed(load_config(args.config, TrainConfig), args.seed)
        write_jsonl(metrics_path, [])
        checkpoint = train(config, dataset, record_epoch, save_periodic, not args.quiet)

    save_checkpoint(args.out, checkpoint)
    print(f'checkpoint after epoch {checkpoint.epoch} written to {args.out}')


def run_detect(args):
    checkpoint = load_checkpoint(args.ckpt)
    dataset, _ = load_dataset(args.data)

    config = load_config(args.config, DecodeConfig)
    overrides = {key: value for key, value in (('samples', args.samples), ('threshold', args.threshold))
                 if value is not None}
    config = DecodeConfig.model_validate(config.model_dump() | overrides)

    detections, seconds = detect_videos(denoiser_from_checkpoint(checkpoint), dataset,
                                        dataset.split_indices(args.split),
                                        schedule_from_config(checkpoint.schedule_config), config, args.seed,
                                        args.jobs)
    write_jsonl(args.out, detections)
    per_clip = sum(seconds) / len(seconds) if seconds else 0.0
    print(f'{len(detections)} detections for {len(seconds)} videos, {per_clip:.3f} s per clip')


def run_eval(args):
    manifest = read_manifest(args.data)
    video_ids = set(manifest.videos if args.split == 'all' else getattr(manifest, args.split))

    annotations = [annotation for annotation in read_annotations(args.data) if annotation.video_id in video_ids]
    predictions = [prediction for prediction in read_jsonl(args.preds, ActionInstance)
                   if prediction.video_id in video_ids]

    report = map_report(predictions, ground_truth_instances(annotations), args.thresholds)
    print(format_report_table(report))
    if args.report:
        write_json(args.report, report.model_dump(mode='json'))


def run_render(args):
    dataset, _ = load_dataset(args.data)
    if args.gt:
        video = dataset.videos[dataset.index_of(args.gt)]
        image = stitch(*encode_ground_truth(video.annotation, dataset.classes))
    else:
        checkpoint = load_checkpoint(args.image_from)
        index = dataset.index_of(args.video)
        video = dataset.videos[index]
        image = reverse_chain(denoiser_from_checkpoint(checkpoint), video.features,
                              np.ones(video.num_frames, dtype=bool),
                              schedule_from_config(checkpoint.schedule_config), DecodeConfig(samples=args.samples),
                              derive_rng(args.seed, Stream.DETECTION, index))
    write_pgm(args.out, image, args.scale)
    print(f'{image.num_rows} x {image.width} image written to {args.out}')


def run_diffuse_demo(args):
    schedule = schedule_from_config(load_config(args.config, ScheduleConfig))
    rows = drift_table(schedule, args.t_list, args.samples, args.classes, derive_rng(args.seed, Stream.DEMO))
    print(format_drift_table(rows))


COMMANDS = {
    'synth': run_synth,
    'train': run_train,
    'detect': run_detect,
    'eval': run_eval,
    'render': run_render,
    'diffuse-demo': run_diffuse_demo,
}


def run(args):
    """
    Dispatches a parsed command
    :param args: The result of parse_args
    :return: 0 on success, 1 when the command failed
    """
    try:
        COMMANDS[args.command](args)
        return 0
    except Exception as e:
        handle_error(e)
        return 1


def main(argv=None):
    return run(parse_args(sys.argv[1:] if argv is None else argv))


if __name__ == '__main__':
    sys.exit(main())
