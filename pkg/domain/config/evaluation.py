# tIoU thresholds reported for THUMOS-style evaluation
default_thresholds = (0.3, 0.4, 0.5, 0.6, 0.7)
