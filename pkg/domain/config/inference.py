# Boundary probability threshold for start and end columns
default_threshold = 0.9

# Number of reverse chains averaged per video
default_samples = 10

# Gaussian Soft-NMS decay parameter
default_nms_sigma = 0.5

# Candidates whose decayed score drops below this are discarded
default_score_floor = 0.001

# Start/end coupling is quadratic, so candidates are capped per video before Soft-NMS
default_max_candidates = 200
