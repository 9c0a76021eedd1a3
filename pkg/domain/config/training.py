default_epochs = 40
default_batch_size = 16
# Desk-scale rate for about 500 updates
default_learning_rate = 1e-3
# Rate for pretrained video features and long runs
reference_learning_rate = 2e-5
default_weight_decay = 0.01
default_adam_betas = (0.9, 0.999)
default_grad_clip = 1.0

# Independent noise draws per example that are averaged in the loss
default_train_samples = 2

# Desk scale padding length. Longer videos are an error, never truncated.
default_n_max = 64

# Periodic checkpoint interval in epochs. Zero disables periodic checkpoints.
default_checkpoint_every = 0
