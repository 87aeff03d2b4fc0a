import numpy as np
from pytest import approx
import plateflow.plate as pl
from plateflow.plate.quadrature import gauss_rule, composite_rule
from plateflow.plate.assembly import (
    build_grams,
    build_gram_y,
    assemble_system,
    assemble_oracle,
    bending_matrix,
    bending_apply,
    prestress_matrix,
    transport_matrix,
    seminorm_matrix,
    load_vector,
    forcing_vector,
    relative_difference,
)


def make_grams(n1=6, m2=2):
    grid = pl.make_grid(n1, m2, 0.2)
    basis = pl.basis.build_basis(grid, verbose=False)
    grams = build_grams(basis)
    return grid, basis, grams


def entrywise_difference(a, b, floor=1e-3):
    """Largest |a - b| / |b| over the entries, with |b| raised to `floor` times max|b| for tiny entries."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.maximum(np.abs(b), floor * np.max(np.abs(b)))
    return float(np.max(np.abs(a - b) / scale))


def test_gram_x_single_mode():
    grid, basis, grams = make_grams(3, 1)
    assert grams.X(0, 0)[0, 0] == approx(np.pi / 2, abs=1e-14)
    assert grams.X(1, 1)[0, 0] == approx(np.pi / 2, abs=1e-14)
    assert grams.X(2, 2)[0, 0] == approx(np.pi / 2, abs=1e-14)
    assert grams.X(2, 0)[0, 0] == approx(-np.pi / 2, abs=1e-14)
    assert grams.X(0, 2)[0, 0] == approx(-np.pi / 2, abs=1e-14)
    assert grams.X(1, 0)[0, 0] == approx(0.0, abs=1e-14)
    assert grams.x_integrals[0] == approx(2.0, abs=1e-14)


def test_gram_x():
    grid, basis, grams = make_grams(8, 1)
    X00, X11, X20 = grams.X(0, 0), grams.X(1, 1), grams.X(2, 0)
    for key in [(0, 0), (1, 1), (2, 2), (2, 0)]:
        M = grams.X(*key)
        assert np.all(M == M.T)
    assert np.all(np.linalg.eigvalsh(X00) > 0)
    # Integration by parts with hinged ends
    assert np.max(np.abs(X20 + X11)) < 1e-12 * np.max(np.abs(X11))
    assert np.max(np.abs(grams.X(1, 0) + grams.X(0, 1))) < 1e-12
    # Closed forms against composite quadrature
    xq, wx = composite_rule(np.linspace(0.0, np.pi, 41), gauss_rule(10))
    for a, b in [(0, 0), (1, 1), (2, 2), (1, 0)]:
        quadrature = (basis.sine.values(xq, a) * wx[:, None]).T @ basis.sine.values(xq, b)
        assert relative_difference(grams.X(a, b), quadrature) < 1e-10
    integrals = wx @ basis.sine.values(xq)
    assert np.max(np.abs(grams.x_integrals - integrals)) < 1e-12


def test_gram_y():
    grid, basis, grams = make_grams(6, 2)
    Y00, Y11, Y10 = grams.Y(0, 0), grams.Y(1, 1), grams.Y(1, 0)
    # Row sums follow from the partition of unity
    assert np.max(np.abs(Y00.sum(axis=1) - grams.y_integrals)) < 1e-14
    assert np.sum(grams.y_integrals) == approx(0.4, abs=1e-14)
    assert np.max(np.abs(Y11.sum(axis=1))) < 1e-10
    assert np.max(np.abs(Y10 + Y10.T - grams.boundary_y)) < 1e-12
    assert grams.boundary_y[0, 0] == approx(-1.0, abs=1e-14)
    assert grams.boundary_y[-1, -1] == approx(1.0, abs=1e-14)
    # Nodes without a common macro-element do not interact
    assert Y00[0, 6] == 0.0
    assert Y00[1, 4] == 0.0
    # More points than needed give the same Grams
    fine = build_gram_y(basis.lagrange, gauss_rule(10))
    for key, M in fine.items():
        assert relative_difference(grams.y[key], M) < 1e-13
    try:
        build_gram_y(basis.lagrange, gauss_rule(3))
        assert False
    except ValueError:
        assert True


def test_lookup():
    grid, basis, grams = make_grams(6, 1)
    assert np.all(grams.Y(0, 1) == grams.Y(1, 0).T)
    try:
        grams.X(2, 1)
        assert False
    except KeyError:
        assert True
    rng = np.random.default_rng(0)
    q = rng.uniform(-1, 1, grid.dof)
    for test, trial in [((0, 0), (0, 1)), ((2, 0), (0, 2)), ((1, 1), (1, 1))]:
        assert np.max(np.abs(grams.apply(test, trial, q) - grams.term(test, trial) @ q)) < 1e-10 * np.max(np.abs(grams.term(test, trial)))


def test_symmetry_at_rest():
    grid, basis, grams = make_grams(8, 2)
    system = assemble_system(grams, pl.PlateParameters(), grid)
    assert np.max(np.abs(system.matrix - system.matrix.T)) < 1e-12
    assert system.dof == grid.dof
    # The flow breaks the symmetry
    moving = system.at_alpha(-10.0)
    assert np.max(np.abs(moving.matrix - moving.matrix.T)) > 1e-6
    assert np.max(np.abs(transport_matrix(grams) + transport_matrix(grams).T - np.kron(grams.boundary_y, grams.X(0, 0)))) < 1e-12


def test_flow_parameter():
    grid, basis, grams = make_grams(6, 2)
    params = pl.PlateParameters()
    rest = assemble_system(grams, params, grid)
    T = transport_matrix(grams)
    for alpha in [-1.0, -10.0, -125.0]:
        system = assemble_system(grams, params.replace(alpha=alpha), grid)
        assert np.max(np.abs(system.matrix - rest.matrix + alpha * T)) < 1e-12 * np.max(np.abs(rest.matrix))
        cached = rest.at_alpha(alpha)
        assert np.all(cached.matrix == system.matrix)
    try:
        assemble_system(grams, params, pl.make_grid(8, 2))
        assert False
    except ValueError:
        assert True


def test_load_vector():
    grid, basis, grams = make_grams(6, 2)
    zero = assemble_system(grams, pl.PlateParameters(g_const=0.0), grid)
    assert np.all(zero.rhs == 0.0)
    b = load_vector(grams, 1.0)
    assert relative_difference(b, forcing_vector(basis, 1.0)) < 1e-12
    assert relative_difference(3.0 * b, load_vector(grams, 3.0)) < 1e-15
    # A separable forcing
    g = lambda x, y: np.sin(x) * np.ones_like(y)
    expected = np.kron(grams.y_integrals, grams.X(0, 0) @ np.sin(grid.x_interior))
    assert relative_difference(forcing_vector(basis, g), expected) < 1e-12


def test_oracle():
    grid, basis, grams = make_grams(6, 2)
    params = pl.PlateParameters()
    for mu in [-0.5, 0.0, 1.0]:
        tensor = assemble_system(grams, params.replace(mu=mu), grid)
        oracle = assemble_oracle(basis, params.replace(mu=mu))
        for alpha in [0.0, -10.0, -125.0]:
            assert relative_difference(tensor.at_alpha(alpha).matrix, oracle.at_alpha(alpha).matrix) < 1e-9
        assert relative_difference(tensor.rhs, oracle.rhs) < 1e-12
    assert relative_difference(-transport_matrix(grams), assemble_oracle(basis, params).flow) < 1e-10
    # A smaller grid agrees tighter
    grid, basis, grams = make_grams(4, 1)
    tensor = assemble_system(grams, params.replace(alpha=-10.0), grid)
    oracle = assemble_oracle(basis, params.replace(alpha=-10.0))
    assert relative_difference(tensor.matrix, oracle.matrix) < 1e-10


def test_bending():
    grid, basis, grams = make_grams(6, 2)
    sigma = 0.2
    K = bending_matrix(grams, sigma)
    H = seminorm_matrix(grams)
    assert np.all(K == K.T)
    rng = np.random.default_rng(0)
    for q in rng.uniform(-1, 1, (100, grid.dof)):
        energy = q @ K @ q
        assert energy > 0
        assert energy >= (1 - sigma) * (q @ H @ q) - 1e-10 * energy
        assert np.max(np.abs(bending_apply(grams, sigma, q) - K @ q)) < 1e-10 * np.max(np.abs(K @ q))
    # Prestress block is positive definite
    assert np.all(np.linalg.eigvalsh(prestress_matrix(grams)) > 0)


def test_relative_difference():
    assert relative_difference([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert relative_difference([1.0, 3.0], [1.0, 2.0]) == approx(0.5)
    assert relative_difference([1e-3], [0.0]) == approx(1e-3)
    try:
        relative_difference([1.0], [1.0, 2.0])
        assert False
    except ValueError:
        assert True


def test_oracle_entrywise():
    params = pl.PlateParameters(sigma=0.2, mu=-0.5, alpha=-10.0)
    for n1, m2 in [(6, 2), (4, 1)]:
        grid, basis, grams = make_grams(n1, m2)
        tensor = assemble_system(grams, params, grid)
        oracle = assemble_oracle(basis, params)
        assert entrywise_difference(tensor.matrix, oracle.matrix) < 1e-9
        assert entrywise_difference(tensor.rhs, oracle.rhs) < 1e-9
        # Entries that vanish in one assembly vanish in the other
        assert np.all(np.abs(oracle.matrix[tensor.matrix == 0.0]) < 1e-12 * np.max(np.abs(oracle.matrix)))
    assert entrywise_difference([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert entrywise_difference([1.0, 1e-6], [1.0, 0.0]) == approx(1e-3)
