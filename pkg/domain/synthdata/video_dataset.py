from dataclasses import dataclass, field

from nptyping import NDArray, Shape, Float64

from domain.exceptions.contract_violation import ContractViolation


@dataclass(frozen=True)
class VideoRecord:
    """
    The frozen features of one video and its ground truth
    """
    video_id: str
    features: NDArray[Shape["*, *"], Float64]
    annotation: object

    @property
    def num_frames(self):
        return self.features.shape[0]


@dataclass(frozen=True)
class VideoDataset:
    """
    A set of videos sharing a class count and feature width, with the train/test split
    """
    classes: int
    feature_channels: int
    videos: list = field(default_factory=list)
    train_ids: list = field(default_factory=list)
    test_ids: list = field(default_factory=list)

    def index_of(self, video_id):
        for index, video in enumerate(self.videos):
            if video.video_id == video_id:
                return index
        raise ContractViolation(f'video {video_id} is not in the dataset (index_of).')

    def indices_of(self, video_ids):
        positions = {video.video_id: index for index, video in enumerate(self.videos)}
        missing = [video_id for video_id in video_ids if video_id not in positions]
        if missing:
            raise ContractViolation(f'videos {missing} are not in the dataset (indices_of).')
        return [positions[video_id] for video_id in video_ids]

    def split_indices(self, split):
        """
        :param split: "train", "test" or "all"
        :return: The video positions of the split, in manifest order
        """
        if split == 'all':
            return list(range(len(self.videos)))
        if split == 'train':
            return self.indices_of(self.train_ids)
        if split == 'test':
            return self.indices_of(self.test_ids)
        raise ContractViolation(f'split must be train, test or all, got {split} (split_indices).')
