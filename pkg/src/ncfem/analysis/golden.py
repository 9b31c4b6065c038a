""" Published reference values.

Convergence rows are (1/h, broken H1 error, L2 error). In 2D all four options agree to the
four printed digits, so a single table per problem serves every option.
"""

CONVERGENCE = {
    # Square wave, unit square.
    'ex1': [
        (8, 1.123e+01, 4.230e-01),
        (16, 5.466e+00, 8.607e-02),
        (32, 2.832e+00, 2.216e-02),
        (64, 1.429e+00, 5.585e-03),
        (128, 7.160e-01, 1.399e-03),
        (256, 3.582e-01, 3.499e-04),
    ],
    # Bump profile, unit square.
    'ex2': [
        (8, 1.225e-03, 5.649e-05),
        (16, 6.024e-04, 1.033e-05),
        (32, 3.045e-04, 1.949e-06),
        (64, 1.527e-04, 4.682e-07),
        (128, 7.642e-05, 1.171e-07),
        (256, 3.822e-05, 2.929e-08),
    ],
    # Product of sines, unit cube, option 4 only.
    'ex3': [
        (8, 1.505e+00, 3.848e-02),
        (16, 7.550e-01, 9.716e-03),
        (32, 3.777e-01, 2.434e-03),
        (64, 1.889e-01, 6.089e-04),
        (128, 9.443e-02, 1.523e-04),
    ],
    # Product of sines, unit square.
    'sine2d': [
        (8, 1.410e+00, 3.037e-02),
        (16, 7.104e-01, 7.601e-03),
        (32, 3.559e-01, 1.901e-03),
        (64, 1.780e-01, 4.752e-04),
        (128, 8.903e-02, 1.188e-04),
        (256, 4.452e-02, 2.970e-05),
    ],
}

# Options each table was published for.
CONVERGENCE_OPTIONS = {'ex1': (1, 2, 3, 4), 'ex2': (1, 2, 3, 4), 'ex3': (4, ),
                       'sine2d': (1, 2, 3, 4)}

# Solver iterations of the bump problem at h = 1/256; only the ordering carries over.
ITERATIONS = {1: 4944, 2: 817, 3: 437, 4: 318}


def _block(nz, rows):
    """ Expand rows of a lower triangular block (N_x >= N_y >= N_z) into a dict. """
    table = dict()
    for nx, values in rows.items():
        for ny, value in zip(range(nz, nx + 1), values):
            table[(nx, ny, nz)] = value
    return table


# Stiffness rank deficiency in 3D, for N_x >= N_y >= N_z.
RANK_DEFICIENCY = {
    **_block(2, {2: [5],
                 3: [4, 1],
                 4: [7, 4, 9],
                 5: [6, 1, 6, 1],
                 6: [9, 4, 11, 6, 13],
                 7: [8, 1, 8, 1, 8, 1],
                 8: [11, 4, 13, 6, 15, 8, 17]}),
    **_block(3, {3: [1],
                 4: [1, 4],
                 5: [1, 1, 1],
                 6: [1, 4, 1, 4],
                 7: [1, 1, 1, 1, 1],
                 8: [1, 4, 1, 4, 1, 4]}),
    **_block(4, {4: [11],
                 5: [6, 1],
                 6: [13, 6, 15],
                 7: [8, 1, 8, 1],
                 8: [15, 6, 17, 8, 19]}),
    **_block(5, {5: [1],
                 6: [1, 6],
                 7: [1, 1, 1],
                 8: [1, 6, 1, 6]}),
}


def reference_errors(problem_name, inverse_h):
    """ (H1, L2) for a problem and 1/h, or None if not published. """
    for n, h1, l2 in CONVERGENCE.get(problem_name, []):
        if n == inverse_h:
            return h1, l2
    return None


def reference_rank_deficiency(counts):
    """ The published deficiency of a triple in any order, or None. """
    return RANK_DEFICIENCY.get(tuple(sorted(counts, reverse=True)))
