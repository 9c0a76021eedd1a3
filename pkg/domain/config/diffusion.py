# Number of forward noising steps
default_steps = 50

# Linear beta ramp. With 50 steps these drive alpha_bar_T well below the convergence limit.
default_beta_min = 0.05
default_beta_max = 0.30

# Multinomial trial count for the per-step noise vector
default_trials = 200

# Fixed posterior normalizer. It cancels in any normalized or argmax use.
default_sigma = 1.0

# alpha_bar_T must not exceed this for the last step to count as uniform noise
max_final_alpha_bar = 1e-3

# Implied multinomial counts within this distance of an integer are treated as on the lattice
lattice_tolerance = 1e-6
