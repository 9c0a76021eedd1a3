default_num_videos = 250
default_min_frames = 56
default_max_frames = 64

# Five action classes plus the background class in column 0
default_classes = 6
default_feature_channels = 16
default_min_instances = 1
default_max_instances = 4
default_min_length = 4
default_max_length = 16
default_noise_std = 0.5
default_separation = 2.0

# 50 of 250 videos
default_test_fraction = 0.2
