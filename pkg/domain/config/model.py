# Number of stacked row-column blocks
default_blocks = 3

# Attention heads used by both the column and the row attention
default_heads = 4

# Per-entry embedding width used by the column attention
default_column_width = 16

# Row tokens are projected to this width for attention. Must be divisible by the head count.
default_attention_width = 32

# Hidden width multiplier of the two-layer MLPs
default_mlp_ratio = 4

# Standard deviation of the learnable positional embeddings at initialization
positional_init_std = 0.02
