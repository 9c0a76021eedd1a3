class VideoTooLong(ValueError):
    """
    Represents a video with more frames than the padded batch length
    """

    def __init__(self, video_id, num_frames, n_max):
        self.video_id = video_id
        self.num_frames = num_frames
        self.n_max = n_max
        super().__init__(f'Video {video_id} has {num_frames} frames but n_max is {n_max}. '
                         f'Increase n_max to at least {num_frames}; videos are never truncated.')
