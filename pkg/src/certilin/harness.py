"""Trial harnesses: matrix generators, soundness attacks, budget benches.

Empirical rates are compared against the protocols' analytic bounds with a
3-sigma binomial allowance: an attack harness passes when the observed
rejection rate is at least bound - 3*sqrt(bound*(1-bound)/trials).

Everything is deterministic given its seed; independent trials derive
per-trial generators from the master seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from random import Random

from .blackbox import SparseMatrix
from .challenges import RandomChallenges
from .errors import FieldTooSmallError
from .field import PrimeField
from .krylov import wiedemann_sequence
from .messages import Accept, BadChallenge, Reject, SingularResult
from .oracle import oracle_charpoly, oracle_det, oracle_minpoly, oracle_cap
from .polynomial import Poly, berlekamp_massey
from .protocol import (budget_report, certify_charpoly, certify_det_diag,
                       certify_det_gamma, certify_det_simple,
                       certify_generator, certify_minpoly, field_size_bound,
                       fiat_shamir, verify_noninteractive)
from .provers import HonestProver, adversarial_prover

PROTOCOL_CHOICES = ("fauv", "minpoly", "det-diag", "det-gamma", "det-simple",
                    "charpoly")


def three_sigma(q: float, trials: int) -> float:
    """3-sigma binomial allowance for a success probability q."""
    q = min(max(q, 0.0), 1.0)
    return 3.0 * math.sqrt(q * (1.0 - q) / trials)


def subseed(seed: int, *parts) -> Random:
    """Independent deterministic generator for a labeled trial."""
    return Random(":".join(str(x) for x in (seed, *parts)))


# -- matrix generators -----------------------------------------------------


def gen_sparse(field: PrimeField, n: int, density: float, rng: Random) -> SparseMatrix:
    """Random COO matrix; each cell filled with probability ``density``."""
    entries = []
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                entries.append((i, j, rng.randrange(1, field.p)))
    return SparseMatrix(field, n, entries)


def gen_nonsingular(field: PrimeField, n: int, rng: Random,
                    density: float = 0.2) -> SparseMatrix:
    """Random nonsingular sparse matrix (nonzero diagonal, scattered upper).

    Triangular by construction, so the determinant is the diagonal product;
    works at any size without a dense check.
    """
    entries = [(i, i, rng.randrange(1, field.p)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                entries.append((i, j, rng.randrange(1, field.p)))
    return SparseMatrix(field, n, entries)


def gen_singular(field: PrimeField, n: int, rng: Random,
                 density: float = 0.4) -> SparseMatrix:
    """Random singular matrix: a dense-ish sample with one duplicated row."""
    if n < 2:
        return SparseMatrix(field, 1, [])
    while True:
        a = gen_sparse(field, n, density, rng)
        rows = a.to_dense()
        rows[n - 1] = rows[0][:]
        entries = [(i, j, rows[i][j]) for i in range(n) for j in range(n)
                   if rows[i][j]]
        out = SparseMatrix(field, n, entries)
        if out.nnz:
            return out


def random_nonsingular_dense_checked(field: PrimeField, n: int, rng: Random,
                                     density: float = 0.3) -> SparseMatrix:
    """Random sparse matrix, resampled until the dense oracle says det != 0."""
    while True:
        a = gen_sparse(field, n, density, rng)
        if oracle_det(a) != 0:
            return a


# -- protocol dispatch --------------------------------------------------------


def run_protocol(protocol: str, a: SparseMatrix, prover, challenge_rng,
                 u=None, v=None, perfectly_complete=False):
    challenges = RandomChallenges(challenge_rng)
    if protocol == "fauv":
        return certify_generator(a, u, v, prover, challenges=challenges)
    if protocol == "fauv-merged":
        return certify_generator(a, u, v, prover, merged=True,
                                 challenges=challenges)
    if protocol == "minpoly":
        return certify_minpoly(a, prover, challenges=challenges,
                               perfectly_complete=perfectly_complete)
    if protocol == "det-diag":
        return certify_det_diag(a, prover, challenges=challenges)
    if protocol == "det-gamma":
        return certify_det_gamma(a, prover, challenges=challenges)
    if protocol == "det-simple":
        return certify_det_simple(a, prover, challenges=challenges)
    if protocol == "charpoly":
        return certify_charpoly(a, prover, challenges=challenges)
    raise ValueError(f"unknown protocol {protocol!r}")


# -- soundness attacks --------------------------------------------------------


_PRODUCT_BOUND_PROTOCOLS = ("fauv",)


def rejection_bound(protocol: str, strategy: str, n: int, p: int):
    """Analytic lower bound on the rejection rate, with a short label."""
    if strategy == "forged_bezout":
        return None, "non-exposing"
    if strategy == "wrong_solution":
        return 1.0, "exact-residual"
    if protocol == "fauv":
        b = (1 - (2 * n - 2) / p) * (1 - (3 * n - 1) / p)
        return b, "two-point"
    if protocol == "det-simple":
        return 1 - (3 * n - 2) / (p - n), "quotient-of-minors"
    if protocol == "charpoly":
        return 1 - 2 * n / p, "claim-collision"
    # Merged-point protocols share one evaluation point.
    return 1 - (5 * n - 3) / p, "merged-point"


def _strategy_class(protocol: str, strategy: str):
    if protocol == "charpoly" and strategy in ("wrong_generator", "wrong_claim"):
        return adversarial_prover("wrong_claim")
    return adversarial_prover(strategy)


@dataclass
class AttackReport:
    protocol: str
    strategy: str
    n: int
    p: int
    trials: int
    accepted: int = 0
    rejected: int = 0
    bad_challenge: int = 0
    bound: float | None = None
    allowance: float = 0.0
    label: str = ""

    @property
    def rejection_rate(self) -> float:
        return self.rejected / self.trials

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.trials

    @property
    def passed(self) -> bool:
        if self.label == "non-exposing":
            return self.accepted == self.trials
        if self.bound is None:
            return self.rejected == self.trials
        return self.rejection_rate >= self.bound - self.allowance


def run_attack(protocol: str, strategy: str, trials: int, n: int, p: int,
               seed: int) -> AttackReport:
    """Seeded adversarial sessions; reports empirical rejection vs bound."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    field = PrimeField(p)
    setup = subseed(seed, "setup")
    if strategy == "singular_denial":
        a = gen_singular(field, n, setup)
    else:
        a = (random_nonsingular_dense_checked(field, n, setup)
             if n <= oracle_cap() else gen_nonsingular(field, n, setup))
    u = field.sample_vector(setup, n)
    v = field.sample_vector(setup, n)
    cls = _strategy_class(protocol, strategy)
    bound, label = rejection_bound(protocol, strategy, n, p)
    report = AttackReport(protocol, strategy, n, p, trials, bound=bound,
                          label=label,
                          allowance=three_sigma(bound, trials) if bound else 0.0)
    for i in range(trials):
        prover = cls(field, subseed(seed, "prover", i))
        _, outcome = run_protocol(protocol, a, prover,
                                  subseed(seed, "challenge", i), u=u, v=v)
        if isinstance(outcome, Accept):
            report.accepted += 1
        elif isinstance(outcome, Reject):
            report.rejected += 1
        else:
            report.bad_challenge += 1
    return report


# -- completeness -----------------------------------------------------------------


@dataclass
class CompletenessReport:
    protocol: str
    n: int
    p: int
    trials: int
    accepted: int = 0
    rejected: int = 0
    bad_challenge: int = 0

    @property
    def accept_rate(self) -> float:
        return self.accepted / self.trials


def run_completeness(protocol: str, trials: int, n: int, p: int, seed: int,
                     perfectly_complete: bool = False,
                     matrix: SparseMatrix | None = None) -> CompletenessReport:
    field = PrimeField(p)
    setup = subseed(seed, "setup")
    a = matrix if matrix is not None else (
        random_nonsingular_dense_checked(field, n, setup)
        if n <= oracle_cap() else gen_nonsingular(field, n, setup))
    u = field.sample_vector(setup, n)
    v = field.sample_vector(setup, n)
    report = CompletenessReport(protocol, n, p, trials)
    for i in range(trials):
        prover = HonestProver(field, subseed(seed, "prover", i))
        _, outcome = run_protocol(protocol, a, prover,
                                  subseed(seed, "challenge", i), u=u, v=v,
                                  perfectly_complete=perfectly_complete)
        if isinstance(outcome, Accept):
            report.accepted += 1
        elif isinstance(outcome, Reject):
            report.rejected += 1
        else:
            report.bad_challenge += 1
    return report


# -- budget bench ------------------------------------------------------------------


@dataclass
class BenchRow:
    protocol: str
    n: int
    nnz: int
    verifier_ops: int
    ops_bound: int | None
    sent: int
    sent_bound: int | None
    random_elements: int
    ok: bool


def run_bench(protocol: str, sizes, p: int, seed: int,
              density: float | None = None) -> list:
    """One honest Fiat-Shamir session per size; meters against budgets."""
    field = PrimeField(p)
    rows = []
    for n in sizes:
        rng = subseed(seed, "bench", protocol, n)
        d = density if density is not None else min(0.3, 5.0 / n)
        a = gen_nonsingular(field, n, rng, d)
        prover = HonestProver(field, rng)
        if protocol == "fauv":
            u = field.sample_vector(rng, n)
            v = field.sample_vector(rng, n)
            transcript, outcome = fiat_shamir("fauv", a, prover, u=u, v=v)
        else:
            transcript, outcome = fiat_shamir(protocol, a, prover)
        if not isinstance(outcome, Accept):
            raise RuntimeError(f"bench session did not accept: {outcome}")
        rep = budget_report(transcript, a)
        rows.append(BenchRow(
            protocol=protocol, n=n, nnz=a.nnz,
            verifier_ops=rep.verifier_ops, ops_bound=rep.ops_bound,
            sent=rep.sent, sent_bound=rep.sent_bound,
            random_elements=rep.random_draws + rep.prover_draws,
            ok=rep.ok))
    return rows


# -- selftest ---------------------------------------------------------------------


@dataclass
class SelftestReport:
    lines: list = dc_field(default_factory=list)
    failures: int = 0
    skipped: int = 0

    def note(self, text: str):
        self.lines.append(text)

    def check(self, label: str, ok: bool, detail: str = ""):
        if ok:
            self.lines.append(f"PASS {label}")
        else:
            self.failures += 1
            self.lines.append(f"FAIL {label}" + (f" ({detail})" if detail else ""))

    def skip(self, label: str, why: str):
        self.skipped += 1
        self.lines.append(f"SKIP {label} ({why})")

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _sequence_generator_check(a: SparseMatrix, u, v, gen: Poly) -> bool:
    """Accepted generator must be the BM generator of the actual sequence."""
    seq = wiedemann_sequence(a, u, v, 2 * a.n)
    return berlekamp_massey(a.field, seq) == gen


def run_selftest(max_n: int, seeds: int, p: int, seed: int = 0) -> SelftestReport:
    """Cross-check every protocol against the dense oracles."""
    report = SelftestReport()
    field = PrimeField(p)
    cap = oracle_cap()
    if max_n > cap:
        raise ValueError(f"selftest needs max_n <= oracle cap ({cap})")
    ladder = [n for n in (2, 3, 4, 6, 8, 10, 12) if n <= max_n] or [max_n]

    for k in range(seeds):
        n = ladder[k % len(ladder)]
        rng = subseed(seed, "matrix", k)
        a = random_nonsingular_dense_checked(field, n, rng)
        for protocol in PROTOCOL_CHOICES:
            label = f"{protocol} n={n} seed={k}"
            try:
                bound = field_size_bound(
                    {"fauv": "fauv", "minpoly": "minpoly-pc"}.get(protocol, protocol), n)
                if p < bound:
                    report.skip(label, f"field too small, requires p >= {bound}")
                    continue
                prover = HonestProver(field, subseed(seed, "prover", k, protocol))
                if protocol == "fauv":
                    u = field.sample_vector(rng, n)
                    v = field.sample_vector(rng, n)
                    transcript, outcome = fiat_shamir("fauv", a, prover, u=u, v=v)
                elif protocol == "minpoly":
                    transcript, outcome = fiat_shamir("minpoly-pc", a, prover)
                else:
                    transcript, outcome = fiat_shamir(protocol, a, prover)
            except FieldTooSmallError as exc:
                report.skip(label, str(exc))
                continue
            if isinstance(outcome, BadChallenge):
                report.note(f"NOTE {label}: bad challenge, uncertified")
                continue
            if not isinstance(outcome, Accept):
                report.check(label, False, f"outcome {outcome}")
                continue
            result = outcome.result
            if protocol == "fauv":
                ok = _sequence_generator_check(a, u, v, result)
            elif protocol == "minpoly":
                ok = result == oracle_minpoly(a)
            elif protocol == "charpoly":
                ok = result == oracle_charpoly(a)
            else:
                expected = oracle_det(a)
                ok = (expected == 0 if isinstance(result, SingularResult)
                      else result == expected)
            replayed, _ = verify_noninteractive(transcript, a)
            report.check(label, ok and replayed == outcome)

    # Singular batch: every determinant protocol must certify singularity.
    for k in range(3):
        n = min(max_n, 6)
        a = gen_singular(field, n, subseed(seed, "singular", k))
        for protocol in ("det-diag", "det-gamma", "det-simple"):
            label = f"singular {protocol} n={n} seed={k}"
            if p < field_size_bound(protocol, n):
                report.skip(label, "field too small")
                continue
            prover = HonestProver(field, subseed(seed, "singular-prover", k, protocol))
            _, outcome = fiat_shamir(protocol, a, prover)
            ok = (isinstance(outcome, Accept)
                  and isinstance(outcome.result, SingularResult)
                  and oracle_det(a) == 0)
            report.check(label, ok)

    # Soundness spot checks.
    n = min(max_n, 8)
    if p >= field_size_bound("fauv", n):
        att = run_attack("fauv", "wrong_generator", 200, n, p, seed)
        report.check(
            f"attack fauv wrong_generator n={n}",
            att.passed, f"rate {att.rejection_rate:.3f} vs {att.bound:.3f}")
    if p >= field_size_bound("det-gamma", n):
        att = run_attack("det-gamma", "wrong_solution", 100, n, p, seed)
        report.check(f"attack det-gamma wrong_solution n={n}", att.passed)

    # Fiat-Shamir round-trip and tampering.
    n = min(max_n, 6)
    if p >= field_size_bound("det-gamma", n):
        a = random_nonsingular_dense_checked(field, n, subseed(seed, "fs"))
        prover = HonestProver(field, subseed(seed, "fs-prover"))
        transcript, outcome = fiat_shamir("det-gamma", a, prover)
        text = transcript.render()
        from .messages import parse_transcript
        replayed, _ = verify_noninteractive(parse_transcript(text), a)
        report.check("fiat-shamir round-trip", replayed == outcome)
        detected = 0
        tamper_rng = subseed(seed, "tamper")
        for _ in range(20):
            corrupted = _corrupt_payload_byte(text, tamper_rng)
            try:
                out, _ = verify_noninteractive(parse_transcript(corrupted), a)
                if not isinstance(out, Accept):
                    detected += 1
            except Exception:
                detected += 1
        report.check("fiat-shamir tamper detection", detected == 20,
                     f"{detected}/20")
    return report


def _corrupt_payload_byte(text: str, rng: Random) -> str:
    """Flip one digit inside a prover payload token of a transcript."""
    lines = text.rstrip("\n").split("\n")
    candidates = [i for i, line in enumerate(lines)
                  if line.startswith("prover ")]
    li = rng.choice(candidates)
    line = lines[li]
    positions = [i for i, ch in enumerate(line) if ch.isdigit()]
    pos = rng.choice(positions)
    old = line[pos]
    new = rng.choice([d for d in "0123456789" if d != old])
    lines[li] = line[:pos] + new + line[pos + 1:]
    return "\n".join(lines) + "\n"
