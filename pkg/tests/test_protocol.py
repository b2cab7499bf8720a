import math
from random import Random

import pytest

from certilin import (Accept, BadChallenge, FieldTooSmallError,
                      GeneratorPair, HonestProver, Poly, PrimeField, Reject,
                      ScriptedChallenges, SingularResult, SparseMatrix,
                      budget_report, certify_charpoly, certify_det_diag,
                      certify_det_gamma, certify_det_simple,
                      certify_generator, certify_generator_merged,
                      certify_minpoly, field_size_bound, identity_matrix,
                      oracle_charpoly, oracle_det, oracle_minpoly)
from certilin.challenges import RandomChallenges
from certilin.harness import (gen_singular, gen_sparse,
                              random_nonsingular_dense_checked)


def P(field, *coeffs):
    return Poly(field, coeffs)


def diag_matrix(field, values):
    return SparseMatrix(field, len(values), [(i, i, v) for i, v in enumerate(values)])


def swap_matrix(field):
    return SparseMatrix(field, 2, [(0, 1, 1), (1, 0, 1)])


# -- generator certificate ----------------------------------------------------


def test_fauv_swap_honest(fbig):
    a = swap_matrix(fbig)
    expected = P(fbig, -1, 0, 1)
    assert oracle_minpoly(a) == expected
    for seed in range(10):
        _, outcome = certify_generator(a, [1, 0], [1, 0], rng=seed)
        assert outcome == Accept(expected)


def test_fauv_merged_identity(fbig):
    a = identity_matrix(fbig, 4)
    _, outcome = certify_generator_merged(a, [1, 0, 0, 0], [1, 0, 0, 0], rng=3)
    assert outcome == Accept(P(fbig, -1, 1))


def test_fauv_merged_zero_matrix(fbig):
    a = SparseMatrix(fbig, 3, [])
    _, outcome = certify_generator_merged(a, [1, 0, 0], [1, 0, 0], rng=4)
    assert outcome == Accept(P(fbig, 0, 1))


def test_fauv_zero_projection(fbig):
    a = swap_matrix(fbig)
    _, outcome = certify_generator(a, [0, 0], [1, 0], rng=5)
    assert outcome == Accept(Poly.one(fbig))


def test_fauv_field_gate():
    f11 = PrimeField(11)
    a = identity_matrix(f11, 4)
    with pytest.raises(FieldTooSmallError) as e:
        certify_generator(a, [1, 0, 0, 0], [1, 0, 0, 0], rng=1)
    assert e.value.required == 12
    with pytest.raises(FieldTooSmallError) as e:
        certify_minpoly(identity_matrix(f11, 10), rng=1)
    assert "requires p >= 48" in str(e.value)


def test_fauv_bad_challenge_path(fbig):
    # Identity matrix: the Krylov annihilator is x - 1, so challenge 1 is bad.
    a = identity_matrix(fbig, 3)
    ch = ScriptedChallenges([5, 1], RandomChallenges(Random(0)))
    _, outcome = certify_generator(a, [1, 0, 0], [1, 0, 0], rng=9, challenges=ch)
    assert isinstance(outcome, BadChallenge)


def test_fauv_prover_matvec_budget(fbig):
    a = gen_sparse(fbig, 10, 0.3, Random(41))
    t, outcome = certify_generator(a, [1] * 10, [2] * 10, rng=42)
    assert isinstance(outcome, Accept)
    assert t.prover_meter.matvec <= 2 * a.n + outcome.result.degree


def test_fauv_syntactic_gate(fbig):
    class NonMonicProver(HonestProver):
        def _corrupt_pair(self, pair, box):
            return GeneratorPair(pair.gen.scale(2), pair.res)

    a = swap_matrix(fbig)
    prover = NonMonicProver(fbig, Random(1))
    _, outcome = certify_generator(a, [1, 0], [1, 0], prover, rng=2)
    assert outcome == Reject("malformed-commitment")


def test_fauv_bezout_degree_gate(fbig):
    class FatBezoutProver(HonestProver):
        def bezout(self):
            phi, psi = super().bezout()
            return phi + self._commit.res, psi - self._commit.gen

    a = swap_matrix(fbig)
    prover = FatBezoutProver(fbig, Random(1))
    _, outcome = certify_generator(a, [1, 0], [1, 0], prover, rng=2)
    assert outcome == Reject("bezout-degree")


# -- minimal polynomial ------------------------------------------------------


def test_minpoly_diagonal(fbig):
    a = diag_matrix(fbig, [1, 2, 3])
    expected = P(fbig, -6, 11, -6, 1)
    assert oracle_minpoly(a) == expected
    for seed in range(5):
        _, outcome = certify_minpoly(a, rng=seed)
        assert outcome == Accept(expected)


def test_minpoly_identity(fbig):
    a = identity_matrix(fbig, 6)
    _, outcome = certify_minpoly(a, rng=1)
    assert outcome == Accept(P(fbig, -1, 1))


def test_minpoly_forced_degenerate_projection(fbig):
    # u = v = e1 sees only the eigenvalue 1 of diag(1, 1, 2); the perfectly
    # complete prover repairs it through a secondary projection.
    a = diag_matrix(fbig, [1, 1, 2])
    expected = oracle_minpoly(a)
    assert expected == (P(fbig, -1, 1) * P(fbig, -2, 1)).monic()
    script = [1, 0, 0, 1, 0, 0]
    ch = ScriptedChallenges(script, RandomChallenges(Random(7)))
    transcript, outcome = certify_minpoly(a, rng=8, perfectly_complete=True,
                                          challenges=ch)
    assert outcome == Accept(expected)
    kinds = [m.kind for _, m in transcript.messages]
    assert "projection2" in kinds and kinds.count("commit") == 2

    # Without the perfectly complete machinery the degenerate projection
    # certifies only the projected factor.
    ch = ScriptedChallenges(script, RandomChallenges(Random(7)))
    _, outcome = certify_minpoly(a, rng=8, challenges=ch)
    assert outcome == Accept(P(fbig, -1, 1))


def test_minpoly_pc_no_rejects(fbig):
    a = random_nonsingular_dense_checked(fbig, 8, Random(50))
    for seed in range(30):
        _, outcome = certify_minpoly(a, rng=seed, perfectly_complete=True)
        assert not isinstance(outcome, Reject)
        if isinstance(outcome, Accept):
            assert outcome.result == oracle_minpoly(a)


# -- determinants -----------------------------------------------------------


def test_det_diag_identity(fbig):
    _, outcome = certify_det_diag(identity_matrix(fbig, 2), rng=1)
    assert outcome == Accept(1)


def test_det_protocols_match_oracle(fbig):
    rng = Random(60)
    for seed in range(100):
        a = random_nonsingular_dense_checked(fbig, 10, rng, 0.3)
        expected = oracle_det(a)
        for cert in (certify_det_diag, certify_det_gamma):
            _, outcome = cert(a, rng=seed)
            assert outcome == Accept(expected)


def test_det_sign_convention_both_parities(fbig):
    even = diag_matrix(fbig, [2, 3])          # det 6, n even
    odd = diag_matrix(fbig, [2, 3, 5])        # det 30, n odd
    for a, expected in ((even, 6), (odd, 30)):
        assert oracle_det(a) == expected
        for cert in (certify_det_diag, certify_det_gamma, certify_det_simple):
            _, outcome = cert(a, rng=11)
            assert outcome == Accept(expected), cert.__name__


def test_det_singular_witness(fbig):
    a = gen_singular(fbig, 6, Random(70))
    assert oracle_det(a) == 0
    for cert in (certify_det_diag, certify_det_gamma, certify_det_simple):
        transcript, outcome = cert(a, rng=12)
        assert outcome == Accept(SingularResult())
        kinds = [m.kind for _, m in transcript.messages]
        assert kinds == ["witness"]


def test_det_simple(f101, fbig):
    _, outcome = certify_det_simple(identity_matrix(f101, 2), rng=1)
    assert outcome == Accept(1)
    rng = Random(80)
    for seed in range(100):
        a = random_nonsingular_dense_checked(fbig, 3, rng, 0.6)
        _, outcome = certify_det_simple(a, rng=seed)
        assert outcome == Accept(oracle_det(a))


def test_det_gamma_randomness_economy(fbig):
    a = random_nonsingular_dense_checked(fbig, 10, Random(90), 0.3)
    t, outcome = certify_det_gamma(a, rng=13)
    assert isinstance(outcome, Accept)
    assert t.verifier_meter.random_draws == 1
    assert t.prover_meter.random_draws == 2
    t, outcome = certify_det_diag(a, rng=14)
    assert isinstance(outcome, Accept)
    draws = t.verifier_meter.random_draws + t.prover_meter.random_draws
    assert draws == 3 * a.n + 1 <= 3 * a.n + 2


# -- budgets --------------------------------------------------------------------


@pytest.mark.parametrize("n", [10, 50])
def test_verifier_budgets(fbig, n):
    from certilin.harness import gen_nonsingular
    rng = Random(100 + n)
    a = gen_nonsingular(fbig, n, rng, min(0.3, 5.0 / n))
    u = [fbig.sample(rng) for _ in range(n)]
    v = [fbig.sample(rng) for _ in range(n)]

    t, o = certify_generator(a, u, v, rng=1)
    assert isinstance(o, Accept)
    rep = budget_report(t, a)
    assert rep.verifier_ops <= a.matvec_cost() + 17 * n
    assert rep.sent <= 4 * n and rep.ok

    t, o = certify_generator_merged(a, u, v, rng=2)
    rep = budget_report(t, a)
    assert rep.verifier_ops <= a.matvec_cost() + 13 * n and rep.ok

    t, o = certify_det_diag(a, rng=3)
    assert isinstance(o, Accept)
    rep = budget_report(t, a)
    assert rep.verifier_ops <= a.matvec_cost() + 15 * n + 4 * math.ceil(math.log2(n))
    assert rep.sent <= 8 * n and rep.ok

    t, o = certify_det_gamma(a, rng=4)
    assert isinstance(o, Accept)
    rep = budget_report(t, a)
    assert rep.verifier_ops <= a.matvec_cost() + 13 * n + 4 * math.ceil(math.log2(n))
    assert rep.sent <= 5 * n and rep.ok


# -- characteristic polynomial -----------------------------------------------------


def test_charpoly_diag(fbig):
    a = diag_matrix(fbig, [1, 2])
    expected = (P(fbig, -1, 1) * P(fbig, -2, 1)).monic()
    _, outcome = certify_charpoly(a, rng=1)
    assert outcome == Accept(expected)


def test_charpoly_identity(fbig):
    n = 4
    a = identity_matrix(fbig, n)
    expected = oracle_charpoly(a)
    one = P(fbig, -1, 1)
    power = Poly.one(fbig)
    for _ in range(n):
        power = power * one
    assert expected == power
    for seed in range(5):
        _, outcome = certify_charpoly(a, rng=seed)
        assert outcome == Accept(expected)


def test_charpoly_random_matches_oracle(fbig):
    rng = Random(110)
    for seed in range(30):
        a = random_nonsingular_dense_checked(fbig, 6, rng, 0.4)
        _, outcome = certify_charpoly(a, rng=seed)
        assert outcome == Accept(oracle_charpoly(a))


def test_charpoly_singular_matrix_ok(fbig):
    # Works on singular input too: only the shifted matrix enters the
    # determinant subprotocol.
    a = gen_singular(fbig, 5, Random(120))
    _, outcome = certify_charpoly(a, rng=2)
    assert outcome == Accept(oracle_charpoly(a))


# -- field gates across protocols ---------------------------------------------------


def test_field_size_bounds_table():
    assert field_size_bound("fauv", 10) == 30
    assert field_size_bound("fauv-merged", 10) == 48
    assert field_size_bound("minpoly", 10) == 48
    assert field_size_bound("det-diag", 10) == 48
    assert field_size_bound("det-diag", 20) == 190
    assert field_size_bound("det-gamma", 10) == 90
    assert field_size_bound("det-gamma", 12) == 132
    assert field_size_bound("charpoly", 10) == 90


def test_det_gamma_field_gate():
    f101 = PrimeField(101)
    a = identity_matrix(f101, 12)  # needs p >= 132
    with pytest.raises(FieldTooSmallError):
        certify_det_gamma(a, rng=1)


# -- edge paths ---------------------------------------------------------------


def test_all_protocols_n1(fbig):
    a = SparseMatrix(fbig, 1, [(0, 0, 5)])
    for cert in (certify_det_diag, certify_det_gamma, certify_det_simple):
        _, out = cert(a, rng=1)
        assert out == Accept(5)
    _, out = certify_minpoly(a, rng=2)
    assert out == Accept(P(fbig, -5, 1))
    _, out = certify_charpoly(a, rng=3)
    assert out == Accept(P(fbig, -5, 1))


def test_invalid_bezout_identity_rejected(fbig):
    class BrokenBezoutProver(HonestProver):
        def bezout(self):
            phi, psi = super().bezout()
            return phi + Poly.one(self.field), psi  # breaks the identity

    a = swap_matrix(fbig)
    prover = BrokenBezoutProver(fbig, Random(1))
    _, outcome = certify_generator(a, [1, 0], [1, 0], prover, rng=2)
    assert outcome == Reject("coprimality-check")


def test_zero_diagonal_entry_rejected(fbig):
    class ZeroDiagProver(HonestProver):
        def choose_diagonal(self, box):
            diag, u, v = super().choose_diagonal(box)
            diag = [0] + diag[1:]
            return diag, u, v

    a = random_nonsingular_dense_checked(fbig, 4, Random(2), 0.5)
    _, outcome = certify_det_diag(a, ZeroDiagProver(fbig, Random(3)), rng=4)
    assert outcome == Reject("malformed-preconditioner")


def test_singular_gamma_announce_rejected(fbig):
    class SingularGammaProver(HonestProver):
        def choose_gamma(self, box):
            super().choose_gamma(box)
            return fbig.neg(1), 1  # t^n + s = 1 + (-1) = 0 for even n

    a = random_nonsingular_dense_checked(fbig, 4, Random(5), 0.5)
    _, outcome = certify_det_gamma(a, SingularGammaProver(fbig, Random(6)), rng=7)
    assert outcome == Reject("gamma-singular")


def test_degree_requirement_gate(fbig):
    # A committed generator of degree < n fails the determinant gate even
    # when everything else is honest.
    a = diag_matrix(fbig, [2, 2, 3])  # minimal polynomial degree 2

    class LazyProver(HonestProver):
        def choose_diagonal(self, box):
            n = box.n
            diag = [1] * n
            u = [1] + [0] * (n - 1)
            v = [1] + [0] * (n - 1)
            from certilin.blackbox import DiagonalMatrix, ProductOp
            pre = ProductOp(DiagonalMatrix(self.field, diag), box)
            from certilin.krylov import minimal_generator_pair
            self._set_session(pre, v, minimal_generator_pair(pre, u, v, self.meter))
            return diag, u, v

    _, outcome = certify_det_diag(a, LazyProver(fbig, Random(8)), rng=9)
    assert outcome == Reject("degree-requirement")


def test_gate_boundary_exact(f101):
    # p = 101 meets the det-gamma bound n^2 - n exactly at n = 10 (bound 90)
    # and misses it at n = 11 (bound 110).
    ok = random_nonsingular_dense_checked(f101, 10, Random(10), 0.4)
    _, outcome = certify_det_gamma(ok, rng=11)
    assert isinstance(outcome, (Accept, BadChallenge))
    with pytest.raises(FieldTooSmallError):
        certify_det_gamma(identity_matrix(f101, 11), rng=12)
