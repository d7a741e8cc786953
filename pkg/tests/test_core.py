import random
from fractions import Fraction

import pytest

from quivermoduli import (
    DimVector,
    PreconditionError,
    Quiver,
    Stability,
    box_iter,
    eta_factorization,
    is_coprime,
    is_indivisible,
    moduli_dim,
    normalize_stability,
    skew_rank,
    slope,
    symmetric_on_kernel,
)


def kronecker(m, n=0):
    return Quiver(("i", "j"), ((0, m), (n, 0)))


def complete_with_loops(l):
    return Quiver.from_matrix([[1] * l for _ in range(l)])


def bipartite22():
    # sources i1, i2 and sinks j1, j2, one arrow for every source-sink pair
    arrows = [
        [0, 0, 1, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ]
    return Quiver.from_matrix(arrows)


class TestEulerForm:
    def test_no_arrows_reduces_to_dot_product(self):
        q = Quiver.from_matrix([[0, 0], [0, 0]])
        assert q.euler_form(DimVector((1, 1)), DimVector((1, 1))) == 2

    def test_two_kronecker(self):
        q = kronecker(2)
        assert q.euler_form(DimVector((1, 1)), DimVector((1, 1))) == 0

    def test_complete_three_vertex_with_loops(self):
        q = complete_with_loops(3)
        d = DimVector((1, 1, 1))
        assert q.euler_form(d, d) == -6

    def test_dimension_mismatch(self):
        q = kronecker(2)
        with pytest.raises(ValueError):
            q.euler_form(DimVector((1, 1, 1)), DimVector((1, 1)))

    def test_bilinearity(self):
        rng = random.Random(7)
        q = Quiver.from_matrix([[1, 2, 0], [0, 0, 3], [1, 0, 0]])
        for _ in range(50):
            a = rng.randrange(0, 4)
            d = DimVector(tuple(rng.randrange(0, 4) for _ in range(3)))
            e = DimVector(tuple(rng.randrange(0, 4) for _ in range(3)))
            f = DimVector(tuple(rng.randrange(0, 4) for _ in range(3)))
            left = q.euler_form(a * d + e, f)
            assert left == a * q.euler_form(d, f) + q.euler_form(e, f)
            right = q.euler_form(f, a * d + e)
            assert right == a * q.euler_form(f, d) + q.euler_form(f, e)


class TestAntisymForm:
    def test_symmetric_quiver_vanishes(self):
        q = kronecker(2, 2)
        rng = random.Random(3)
        for _ in range(20):
            d = DimVector(tuple(rng.randrange(0, 5) for _ in range(2)))
            e = DimVector(tuple(rng.randrange(0, 5) for _ in range(2)))
            assert q.antisym_form(d, e) == 0

    @pytest.mark.parametrize("m,n", [(1, 0), (3, 1), (2, 5)])
    def test_kronecker_units(self, m, n):
        q = kronecker(m, n)
        assert q.antisym_form(DimVector((1, 0)), DimVector((0, 1))) == n - m

    def test_alternating(self):
        q = Quiver.from_matrix([[1, 2, 0], [0, 0, 3], [1, 0, 0]])
        rng = random.Random(11)
        for _ in range(20):
            d = DimVector(tuple(rng.randrange(0, 4) for _ in range(3)))
            assert q.antisym_form(d, d) == 0

    def test_bipartite_closed_form(self):
        q = bipartite22()
        rng = random.Random(5)
        for _ in range(30):
            e = DimVector(tuple(rng.randrange(0, 4) for _ in range(4)))
            f = DimVector(tuple(rng.randrange(0, 4) for _ in range(4)))
            sources_e, sinks_e = e[0] + e[1], e[2] + e[3]
            sources_f, sinks_f = f[0] + f[1], f[2] + f[3]
            assert q.antisym_form(e, f) == sources_f * sinks_e - sources_e * sinks_f


class TestSkewRank:
    def test_symmetric_is_zero(self):
        assert skew_rank(kronecker(2, 2)) == 0
        assert skew_rank(complete_with_loops(3)) == 0

    def test_kronecker31(self):
        assert skew_rank(kronecker(3, 1)) == 2

    def test_bipartite(self):
        assert skew_rank(bipartite22()) == 2

    def test_even_and_bounded(self):
        rng = random.Random(13)
        for _ in range(20):
            n = rng.randrange(1, 5)
            q = Quiver.from_matrix(
                [[rng.randrange(0, 3) for _ in range(n)] for _ in range(n)]
            )
            r = skew_rank(q)
            assert r % 2 == 0
            assert r <= n


class TestSlope:
    def test_balanced(self):
        assert slope(Stability((1, -1)), DimVector((1, 1))) == 0

    def test_fraction(self):
        assert slope(Stability((1, -1)), DimVector((2, 1))) == Fraction(1, 3)

    def test_zero_stability(self):
        assert slope(Stability((0, 0)), DimVector((3, 4))) == 0

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            slope(Stability((1, -1)), DimVector((0, 0)))


class TestIndivisible:
    def test_examples(self):
        assert is_indivisible(DimVector((1, 1)))
        assert not is_indivisible(DimVector((2, 2)))
        assert is_indivisible(DimVector((2, 3)))

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            is_indivisible(DimVector((0, 0)))


class TestCoprime:
    def test_examples(self):
        assert is_coprime(Stability((1, -1)), DimVector((1, 1)))
        assert not is_coprime(Stability((0, 0)), DimVector((1, 1)))
        assert not is_coprime(Stability((1, -1)), DimVector((2, 2)))

    def test_unit_vector_always_coprime(self):
        assert is_coprime(Stability((0, 0)), DimVector((1, 0)))

    def test_box_guard(self):
        from quivermoduli import BoxGuardExceeded

        with pytest.raises(BoxGuardExceeded):
            is_coprime(Stability((1, -1)), DimVector((100, 100)), max_box=100)


class TestSymmetricOnKernel:
    def test_symmetric_quiver(self):
        for theta in [Stability((0, 0)), Stability((1, -1)), Stability((2, 3))]:
            assert symmetric_on_kernel(kronecker(2, 2), theta)

    def test_one_kronecker_zero_stability(self):
        assert not symmetric_on_kernel(kronecker(1), Stability((0, 0)))

    @pytest.mark.parametrize("m,n", [(1, 0), (3, 1), (2, 5)])
    def test_kronecker_balanced_stability(self, m, n):
        assert symmetric_on_kernel(kronecker(m, n), Stability((1, -1)))

    def test_zero_stability_iff_skew_vanishes(self):
        rng = random.Random(17)
        for _ in range(20):
            n = rng.randrange(1, 5)
            q = Quiver.from_matrix(
                [[rng.randrange(0, 3) for _ in range(n)] for _ in range(n)]
            )
            zero = Stability((0,) * n)
            skew_zero = all(x == 0 for row in q.skew_matrix() for x in row)
            assert symmetric_on_kernel(q, zero) == skew_zero


def _eta_identity_holds(q, theta, eta):
    skew = q.skew_matrix()
    n = q.n
    return all(
        skew[i][j] == eta[i] * theta[j] - theta[i] * eta[j]
        for i in range(n)
        for j in range(n)
    )


class TestEtaFactorization:
    def test_symmetric_quiver_gives_zero(self):
        eta = eta_factorization(kronecker(2, 2), Stability((1, -1)))
        assert all(x == 0 for x in eta)

    @pytest.mark.parametrize("m,n", [(1, 0), (3, 1), (2, 5)])
    def test_kronecker(self, m, n):
        q = kronecker(m, n)
        theta = Stability((1, -1))
        eta = eta_factorization(q, theta)
        assert _eta_identity_holds(q, theta, eta)
        # the result differs from (m - n, 0) by a rational multiple of theta
        diff = (eta[0] - (m - n), eta[1] - 0)
        assert diff[0] * theta[1] == diff[1] * theta[0]

    def test_bipartite(self):
        q = bipartite22()
        theta = Stability((2, 2, -2, -2))
        eta = eta_factorization(q, theta)
        assert _eta_identity_holds(q, theta, eta)

    def test_star_quiver_rational_weights(self):
        # four sources feeding one sink, imprimitive stability
        arrows = [[0] * 5 for _ in range(5)]
        for k in range(4):
            arrows[k][4] = 1
        q = Quiver.from_matrix(arrows)
        theta = Stability((2, 2, 2, 2, -4))
        eta = eta_factorization(q, theta)
        assert _eta_identity_holds(q, theta, eta)
        assert any(x.denominator > 1 for x in eta)

    def test_asymmetric_kernel_rejected(self):
        with pytest.raises(PreconditionError):
            eta_factorization(kronecker(3, 1), Stability((0, 0)))


class TestNormalizeStability:
    def test_already_vanishing(self):
        theta = Stability((1, -1))
        assert normalize_stability(theta, DimVector((1, 1))) == theta

    def test_shift(self):
        assert normalize_stability(Stability((1, 0)), DimVector((1, 1))) == Stability((1, -1))

    def test_collapse(self):
        assert normalize_stability(Stability((1, 1)), DimVector((1, 1))) == Stability((0, 0))

    def test_vanishes_and_preserves_comparisons(self):
        rng = random.Random(23)
        for _ in range(20):
            theta = Stability(tuple(rng.randrange(-3, 4) for _ in range(3)))
            d = DimVector(tuple(rng.randrange(0, 3) for _ in range(3)))
            if d.is_zero:
                continue
            tnorm = normalize_stability(theta, d)
            assert tnorm(d) == 0
            mu = slope(theta, d)
            for e in box_iter(d):
                if e.is_zero:
                    continue
                assert (slope(theta, e) > mu) == (slope(tnorm, e) > 0)


class TestModuliDim:
    def test_two_kronecker_line(self):
        assert moduli_dim(kronecker(2), DimVector((1, 1))) == 1

    def test_complete_three_vertex(self):
        assert moduli_dim(complete_with_loops(3), DimVector((1, 1, 1))) == 7

    def test_point(self):
        assert moduli_dim(Quiver.from_matrix([[0]]), DimVector((1,))) == 0
