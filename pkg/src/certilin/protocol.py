"""Interactive certificates as explicit prover/verifier sessions.

Each protocol is written once as a *flow*: straight-line verifier logic
that pulls prover messages and pushes challenges through a run object.
Two run flavors exist.  A live run drives a prover object and a challenge
source (seeded randomness, or Fiat-Shamir hashing of the canonical
session bytes) and records the transcript.  A replay run re-executes the
same flow against a parsed transcript: prover messages are read back,
challenges are re-derived and compared, every check is re-run and the
verifier meter is recounted.  Any tampering surfaces as a failed parse,
a challenge mismatch or a failed check.

Outcomes are three-valued: Accept carries the certified object, Reject
means the prover was exposed, BadChallenge means the verifier's own
randomness made the session unprovable (the Monte Carlo failure case,
never conflated with Reject).

Verifier work is metered exactly: polynomial evaluations charge their
degree in multiplications and additions, applying an operator charges its
per-shape cost, and the final budget can be checked against the protocol
bounds (mu(A) + 17n for the two-point generator certificate, mu(A) + 13n
merged, mu(A) + 15n and mu(A) + 13n plus a logarithmic term for the two
determinant certificates; communication 4n / 8n / 5n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

from .blackbox import (DiagonalMatrix, GammaMatrix, ProductOp, ShiftOp,
                       SparseMatrix, gamma_det, matrix_digest, matvec)
from .challenges import FiatShamirChallenges, RandomChallenges
from .errors import FieldTooSmallError, UsageError
from .field import dot, scale_sub
from .messages import (Accept, BadChallenge, Bezout, Commitment,
                       DiagonalAnnounce, GammaAnnounce, PointChallenge,
                       Projection, Reject, SecondaryProjection,
                       SingularResult, SingularityWitness, Solution,
                       Transcript, header_bytes, message_bytes, wire_cost)
from .meter import CostMeter
from .polynomial import Poly
from .provers import HonestProver

PROTOCOL_IDS = ("fauv", "fauv-merged", "minpoly", "minpoly-pc",
                "det-diag", "det-gamma", "det-simple", "charpoly")


def field_size_bound(protocol_id: str, n: int) -> int:
    """Minimal field size required for the protocol's soundness analysis."""
    if protocol_id == "fauv":
        return 3 * n
    if protocol_id in ("fauv-merged", "minpoly", "minpoly-pc"):
        return 5 * n - 2
    if protocol_id == "det-diag":
        return max(n * (n - 1) // 2, 5 * n - 2)
    if protocol_id in ("det-gamma", "det-simple", "charpoly"):
        return max(n * n - n, 5 * n - 2)
    raise UsageError(f"unknown protocol {protocol_id!r}")


def require_field_size(protocol_id: str, n: int, p: int):
    bound = field_size_bound(protocol_id, n)
    if p < bound:
        raise FieldTooSmallError(protocol_id, p, bound)


class _RejectSignal(Exception):
    def __init__(self, reason: str):
        self.reason = reason


class _BadChallengeSignal(Exception):
    def __init__(self, detail: str):
        self.detail = detail


def _reject(reason: str):
    raise _RejectSignal(reason)


# -- session runs ---------------------------------------------------------


class _Run:
    live = True

    def __init__(self, protocol_id, field, n, digest, challenges,
                 verifier_meter, prover_meter):
        self.field = field
        self.n = n
        self.vm = verifier_meter
        self.pm = prover_meter
        self.challenges = challenges
        self.messages = []
        self._need_material = getattr(challenges, "needs_material", True)
        self._material = (bytearray(header_bytes(protocol_id, n, field.p, digest))
                          if self._need_material else None)

    def _record(self, role, msg):
        self.messages.append((role, msg))
        if self._need_material:
            self._material += message_bytes(role, msg)

    def draw_quiet(self) -> int:
        self.vm.random_draws += 1
        material = bytes(self._material) if self._need_material else b""
        return self.challenges.draw(self.field, material)


class _LiveRun(_Run):
    live = True

    def prover_message(self, kind, producer):
        msg = producer()
        if msg.kind != kind:
            raise UsageError(f"prover produced {msg.kind}, expected {kind}")
        self._record("prover", msg)
        self.pm.elements_sent += wire_cost(msg)
        return msg

    def prover_maybe(self, kind, producer):
        msg = producer()
        if msg is None:
            return None
        return self.prover_message(kind, lambda: msg)

    def solution(self, producer):
        w = producer()
        if w is None:
            raise _BadChallengeSignal("unlucky-challenge")
        return self.prover_message("solution", lambda: Solution(tuple(w)))

    def record_challenge(self, value) -> int:
        self._record("verifier", PointChallenge(value))
        self.vm.elements_sent += 1
        return value

    def challenge(self) -> int:
        return self.record_challenge(self.draw_quiet())

    def drawn_projection(self, n):
        u = [self.draw_quiet() for _ in range(n)]
        v = [self.draw_quiet() for _ in range(n)]
        self._record("verifier", Projection(tuple(u), tuple(v)))
        self.vm.elements_sent += 2 * n
        return u, v

    def public_projection(self, u, v):
        self._record("verifier", Projection(tuple(u), tuple(v)))
        self.vm.elements_sent += 2 * len(u)
        return list(u), list(v)


class _ReplayRun(_Run):
    live = False

    def __init__(self, transcript: Transcript, field, challenges):
        super().__init__(transcript.protocol_id, field, transcript.n,
                         transcript.matrix_digest, challenges,
                         CostMeter(), CostMeter())
        self._queue = list(transcript.messages)
        self._pos = 0
        self._recorded_outcome = transcript.outcome

    def _peek(self):
        if self._pos < len(self._queue):
            return self._queue[self._pos]
        return None, None

    def exhausted(self) -> bool:
        return self._pos >= len(self._queue)

    def _next(self, role, kind):
        if self._pos >= len(self._queue):
            _reject("malformed-transcript")
        r, msg = self._queue[self._pos]
        if r != role or msg.kind != kind:
            _reject("malformed-transcript")
        self._pos += 1
        self._record(role, msg)
        if role == "prover":
            self.pm.elements_sent += wire_cost(msg)
        else:
            self.vm.elements_sent += wire_cost(msg)
        return msg

    def prover_message(self, kind, producer):
        return self._next("prover", kind)

    def prover_maybe(self, kind, producer):
        r, msg = self._peek()
        if r == "prover" and msg is not None and msg.kind == kind:
            return self._next("prover", kind)
        return None

    def solution(self, producer):
        if self.exhausted() and isinstance(self._recorded_outcome, BadChallenge):
            raise _BadChallengeSignal(self._recorded_outcome.detail)
        return self._next("prover", "solution")

    def record_challenge(self, value) -> int:
        msg = self._next("verifier", "challenge")
        if msg.value != value:
            _reject("challenge-mismatch")
        return value

    def challenge(self) -> int:
        return self.record_challenge(self.draw_quiet())

    def drawn_projection(self, n):
        u = [self.draw_quiet() for _ in range(n)]
        v = [self.draw_quiet() for _ in range(n)]
        msg = self._next("verifier", "projection")
        if msg.u != tuple(u) or msg.v != tuple(v):
            _reject("challenge-mismatch")
        return u, v

    def public_projection(self, u, v):
        msg = self._next("verifier", "projection")
        if len(msg.u) != self.n or len(msg.v) != self.n:
            _reject("malformed-transcript")
        return list(msg.u), list(msg.v)


# -- the generator-certificate core (all protocols reduce to it) -----------


def _fauv_core(run, box, prover, u, v, *, merged, require_deg=None,
               basis_projection=False):
    """Verifier logic of the linear-generator certificate.

    Returns the accepted generator polynomial; raises reject or
    bad-challenge signals otherwise.  ``merged`` shares the coprimality
    point with the final evaluation point.  ``require_deg`` adds the exact
    degree gate used by the determinant protocols.  ``basis_projection``
    marks u = e1 so the projection of the solution is a free coordinate
    pick instead of a metered dot product.
    """
    field, vm = run.field, run.vm
    p = field.p
    n = box.n

    def produce_commit():
        pair = prover.committed_pair()
        return Commitment(pair.gen, pair.res)

    com = run.prover_message("commit", produce_commit)
    gen, res = com.gen, com.res

    # Syntactic gate: monicity and degree bounds come before any randomness.
    if not gen.is_monic() or gen.degree > n:
        _reject("malformed-commitment")
    if require_deg is not None and gen.degree != require_deg:
        _reject("degree-requirement")
    if not res.degree < gen.degree:
        _reject("malformed-commitment")

    bez = run.prover_message("bezout", lambda: Bezout(*prover.bezout()))
    phi, psi = bez.phi, bez.psi
    phi_bound = 0 if res.is_zero() else res.degree - 1
    if phi.degree > phi_bound or psi.degree > gen.degree - 1:
        _reject("bezout-degree")

    r0 = run.challenge()
    r1 = r0 if merged else run.challenge()

    e_gen0 = gen.eval(r0, vm)
    e_res0 = res.eval(r0, vm)
    e_phi = phi.eval(r0, vm)
    e_psi = psi.eval(r0, vm)
    vm.mul += 2
    vm.add += 1
    if (e_phi * e_gen0 + e_psi * e_res0) % p != 1:
        _reject("coprimality-check")

    sol = run.solution(lambda: prover.solution(r1))
    w = list(sol.w)
    if len(w) != n:
        _reject("malformed-solution")

    image = matvec(box, w, vm)
    residual = scale_sub(field, r1, w, image, vm)
    if residual != v:
        _reject("residual-check")

    if merged:
        e_gen1, e_res1 = e_gen0, e_res0
    else:
        e_gen1 = gen.eval(r1, vm)
        e_res1 = res.eval(r1, vm)
    if basis_projection:
        uw = w[0]
    else:
        uw = dot(field, u, w, vm)
    vm.mul += 1
    if uw * e_gen1 % p != e_res1:
        _reject("evaluation-check")
    return gen


def _witness_branch(run, box, prover):
    """Singularity-witness fork of the determinant protocols."""
    def produce():
        w = prover.singularity_witness(box)
        return None if w is None else SingularityWitness(tuple(w))

    msg = run.prover_maybe("witness", produce)
    if msg is None:
        return None
    w = list(msg.w)
    if len(w) != box.n or not any(w):
        _reject("witness-check")
    image = matvec(box, w, run.vm)
    if any(image):
        _reject("witness-check")
    return SingularResult()


def _extract_det(run, gen, denominator) -> int:
    """(-1)^n gen(0) / denominator; one inversion, explicit sign."""
    field, vm = run.field, run.vm
    c0 = gen.constant_term()
    if run.n % 2 == 1:
        c0 = field.neg(c0)
        vm.add += 1
    vm.mul += 1
    return c0 * field.inv(denominator, vm) % field.p


# -- protocol flows ----------------------------------------------------------


def _flow_fauv(run, a, prover, u, v, merged):
    u, v = run.public_projection(u, v)
    if len(u) != a.n or len(v) != a.n:
        _reject("malformed-transcript")
    if run.live:
        prover.open_session(a, u, v)
    return _fauv_core(run, a, prover, u, v, merged=merged)


def _flow_minpoly(run, a, prover, perfectly_complete):
    u, v = run.drawn_projection(a.n)

    def produce_secondary():
        extra = prover.secondary_projection(a, u, v)
        return None if extra is None else SecondaryProjection(
            tuple(extra[0]), tuple(extra[1]))

    msg = (run.prover_maybe("projection2", produce_secondary)
           if perfectly_complete else None)
    if run.live:
        prover.open_session(a, u, v)
    first = _fauv_core(run, a, prover, u, v, merged=True)
    if msg is None:
        return first
    u2, v2 = list(msg.u), list(msg.v)
    if len(u2) != a.n or len(v2) != a.n:
        _reject("malformed-transcript")
    if run.live:
        prover.open_session(a, u2, v2)
    second = _fauv_core(run, a, prover, u2, v2, merged=True)
    if not second.degree > first.degree:
        _reject("degree-requirement")
    return second


def _flow_det_diag(run, a, prover):
    singular = _witness_branch(run, a, prover)
    if singular is not None:
        return singular
    field, n = run.field, a.n
    if run.live:
        diag, u, v = prover.choose_diagonal(a)
    else:
        diag = u = v = None
    dmsg = run.prover_message("precond", lambda: DiagonalAnnounce(tuple(diag)))
    if not isinstance(dmsg, DiagonalAnnounce) or len(dmsg.diag) != n:
        _reject("malformed-preconditioner")
    if not all(dmsg.diag):
        _reject("malformed-preconditioner")
    pmsg = run.prover_message("projection", lambda: Projection(tuple(u), tuple(v)))
    if len(pmsg.u) != n or len(pmsg.v) != n:
        _reject("malformed-transcript")
    u, v = list(pmsg.u), list(pmsg.v)
    box = ProductOp(DiagonalMatrix(field, dmsg.diag), a)
    gen = _fauv_core(run, box, prover, u, v, merged=True, require_deg=n)
    det_d = 1
    p = field.p
    for d in dmsg.diag:
        det_d = det_d * d % p
    run.vm.mul += n - 1
    return _extract_det(run, gen, det_d)


def _det_gamma_core(run, box, prover):
    singular = _witness_branch(run, box, prover)
    if singular is not None:
        return singular
    field, n = run.field, box.n
    if run.live:
        s, t = prover.choose_gamma(box)
    else:
        s = t = None
    gmsg = run.prover_message("precond", lambda: GammaAnnounce(s, t))
    if not isinstance(gmsg, GammaAnnounce):
        _reject("malformed-preconditioner")
    gamma = GammaMatrix(field, n, t=gmsg.t, s=gmsg.s)
    denom = gamma_det(gamma, run.vm)
    if denom == 0:
        _reject("gamma-singular")
    preconditioned = ProductOp(box, gamma)
    e1 = [1] + [0] * (n - 1)
    gen = _fauv_core(run, preconditioned, prover, e1, e1, merged=True,
                     require_deg=n, basis_projection=True)
    return _extract_det(run, gen, denom)


def _flow_det_gamma(run, a, prover):
    return _det_gamma_core(run, a, prover)


_SIMPLE_CHALLENGE_TRIES = 64


def _flow_det_simple(run, a, prover):
    singular = _witness_branch(run, a, prover)
    if singular is not None:
        return singular
    field, vm, n = run.field, run.vm, a.n
    p = field.p
    if run.live:
        s, t, char_full, char_minor = prover.choose_simple(a)
    else:
        s = t = char_full = char_minor = None
    gmsg = run.prover_message("precond", lambda: GammaAnnounce(s, t))
    if not isinstance(gmsg, GammaAnnounce):
        _reject("malformed-preconditioner")
    gamma = GammaMatrix(field, n, t=gmsg.t, s=gmsg.s)
    denom = gamma_det(gamma, vm)
    if denom == 0:
        _reject("gamma-singular")
    com = run.prover_message("commit", lambda: Commitment(char_full, char_minor))
    full, minor = com.gen, com.res
    if not full.is_monic() or full.degree != n:
        _reject("malformed-commitment")
    if not minor.is_monic() or minor.degree != n - 1:
        _reject("malformed-commitment")
    # This protocol predates the Bezout trick: a real GCD on the verifier side.
    if _metered_gcd(full, minor, vm).degree != 0:
        _reject("gcd-check")
    e_full = None
    r1 = None
    for _ in range(_SIMPLE_CHALLENGE_TRIES):
        candidate = run.draw_quiet()
        e = full.eval(candidate, vm)
        if e != 0:
            r1, e_full = candidate, e
            break
    if r1 is None:
        raise _BadChallengeSignal("no-usable-challenge")
    run.record_challenge(r1)
    sol = run.solution(lambda: prover.simple_solution(r1))
    w = list(sol.w)
    if len(w) != n:
        _reject("malformed-solution")
    box = ProductOp(a, gamma)
    image = matvec(box, w, vm)
    residual = scale_sub(field, r1, w, image, vm)
    e_last = [0] * (n - 1) + [1]
    if residual != e_last:
        _reject("residual-check")
    e_minor = minor.eval(r1, vm)
    vm.mul += 1
    if w[n - 1] * e_full % p != e_minor:
        _reject("cramer-check")
    return _extract_det(run, full, denom)


def _flow_charpoly(run, a, prover):
    field, vm, n = run.field, run.vm, a.n

    def produce_claim():
        return Commitment(prover.charpoly_claim(a), Poly.zero(field))

    com = run.prover_message("commit", produce_claim)
    claim = com.gen
    if not claim.is_monic() or claim.degree != n or not com.res.is_zero():
        _reject("malformed-commitment")
    point = run.challenge()
    shifted = ShiftOp(point, a)
    sub = _det_gamma_core(run, shifted, prover)
    e_claim = claim.eval(point, vm)
    if isinstance(sub, SingularResult):
        if e_claim != 0:
            _reject("charpoly-mismatch")
    elif sub != e_claim:
        _reject("charpoly-mismatch")
    return claim


def _metered_gcd(a: Poly, b: Poly, meter: CostMeter) -> Poly:
    """Full Euclidean GCD charging the coefficient operations it performs."""
    while not b.is_zero():
        steps = max(a.degree - b.degree + 1, 0)
        cost = steps * (len(b.coeffs) + 1)
        meter.mul += cost
        meter.add += cost
        meter.inv += 1
        a, b = b, a % b
    return a.monic()


# -- public entry points ------------------------------------------------------


def _resolve(a, prover, rng, challenges):
    if not isinstance(a, SparseMatrix):
        raise UsageError("protocols take the public matrix in sparse form")
    if isinstance(rng, int):
        rng = Random(rng)
    if prover is None:
        prover = HonestProver(a.field, rng if rng is not None else Random(0))
    if challenges is None:
        challenges = RandomChallenges(rng) if rng is not None else FiatShamirChallenges()
    return prover, challenges


def _execute(protocol_id, a, flow, prover, challenges):
    require_field_size(protocol_id, a.n, a.field.p)
    digest = matrix_digest(a)
    run = _LiveRun(protocol_id, a.field, a.n, digest, challenges,
                   CostMeter(), prover.meter)
    try:
        outcome = Accept(flow(run))
    except _RejectSignal as sig:
        outcome = Reject(sig.reason)
    except _BadChallengeSignal as sig:
        outcome = BadChallenge(sig.detail)
    transcript = Transcript(protocol_id, a.n, a.field.p, digest,
                            run.messages, outcome, run.vm,
                            prover.meter.snapshot())
    return transcript, outcome


def certify_generator(a, u, v, prover=None, rng=None, *, merged=False,
                      challenges=None):
    """Certificate for the minimal generator of (u^T A^i v)."""
    prover, challenges = _resolve(a, prover, rng, challenges)
    u = a.field.check_vector(u)
    v = a.field.check_vector(v)
    if len(u) != a.n or len(v) != a.n:
        raise UsageError("projection dimension mismatch")
    pid = "fauv-merged" if merged else "fauv"
    return _execute(pid, a,
                    lambda run: _flow_fauv(run, a, prover, u, v, merged),
                    prover, challenges)


def certify_generator_merged(a, u, v, prover=None, rng=None, *, challenges=None):
    return certify_generator(a, u, v, prover, rng, merged=True,
                             challenges=challenges)


def certify_minpoly(a, prover=None, rng=None, *, perfectly_complete=False,
                    challenges=None):
    """Certificate for the minimal polynomial under random projections."""
    prover, challenges = _resolve(a, prover, rng, challenges)
    pid = "minpoly-pc" if perfectly_complete else "minpoly"
    return _execute(pid, a,
                    lambda run: _flow_minpoly(run, a, prover, perfectly_complete),
                    prover, challenges)


def certify_det_diag(a, prover=None, rng=None, *, challenges=None):
    """Determinant certificate with diagonal preconditioning."""
    prover, challenges = _resolve(a, prover, rng, challenges)
    return _execute("det-diag", a,
                    lambda run: _flow_det_diag(run, a, prover),
                    prover, challenges)


def certify_det_gamma(a, prover=None, rng=None, *, challenges=None):
    """Determinant certificate with corner/diagonal preconditioning."""
    prover, challenges = _resolve(a, prover, rng, challenges)
    return _execute("det-gamma", a,
                    lambda run: _flow_det_gamma(run, a, prover),
                    prover, challenges)


def certify_det_simple(a, prover=None, rng=None, *, challenges=None):
    """The quotient-of-minors determinant protocol (dense prover work)."""
    prover, challenges = _resolve(a, prover, rng, challenges)
    return _execute("det-simple", a,
                    lambda run: _flow_det_simple(run, a, prover),
                    prover, challenges)


def certify_charpoly(a, prover=None, rng=None, *, challenges=None):
    """Characteristic polynomial by reduction to a determinant certificate."""
    prover, challenges = _resolve(a, prover, rng, challenges)
    return _execute("charpoly", a,
                    lambda run: _flow_charpoly(run, a, prover),
                    prover, challenges)


def fiat_shamir(protocol_id, a, prover=None, rng=None, *, u=None, v=None,
                perfectly_complete=False):
    """Run the named protocol non-interactively; returns (Transcript, Outcome).

    The prover's own randomness still comes from ``rng``; every verifier
    challenge is derived by hashing the canonical session bytes.
    """
    challenges = FiatShamirChallenges()
    if protocol_id in ("fauv", "fauv-merged"):
        if u is None or v is None:
            raise UsageError("fauv protocols need explicit projections")
        return certify_generator(a, u, v, prover, rng,
                                 merged=(protocol_id == "fauv-merged"),
                                 challenges=challenges)
    if protocol_id in ("minpoly", "minpoly-pc"):
        return certify_minpoly(a, prover, rng,
                               perfectly_complete=(protocol_id == "minpoly-pc"
                                                   or perfectly_complete),
                               challenges=challenges)
    if protocol_id == "det-diag":
        return certify_det_diag(a, prover, rng, challenges=challenges)
    if protocol_id == "det-gamma":
        return certify_det_gamma(a, prover, rng, challenges=challenges)
    if protocol_id == "det-simple":
        return certify_det_simple(a, prover, rng, challenges=challenges)
    if protocol_id == "charpoly":
        return certify_charpoly(a, prover, rng, challenges=challenges)
    raise UsageError(f"unknown protocol {protocol_id!r}")


def verify_noninteractive(transcript: Transcript, a: SparseMatrix):
    """Replay a Fiat-Shamir transcript; returns (Outcome, verifier meter).

    Raises UsageError when the transcript header does not match the given
    matrix (dimension, modulus or digest).
    """
    if transcript.p != a.field.p:
        raise UsageError("transcript modulus does not match the matrix")
    if transcript.n != a.n:
        raise UsageError("transcript dimension does not match the matrix")
    if transcript.matrix_digest != matrix_digest(a):
        raise UsageError("transcript digest does not match the matrix")
    pid = transcript.protocol_id
    if pid not in PROTOCOL_IDS:
        raise UsageError(f"unknown protocol {pid!r}")
    require_field_size(pid, a.n, a.field.p)
    run = _ReplayRun(transcript, a.field, FiatShamirChallenges())
    flows = {
        "fauv": lambda r: _flow_fauv(r, a, None, None, None, False),
        "fauv-merged": lambda r: _flow_fauv(r, a, None, None, None, True),
        "minpoly": lambda r: _flow_minpoly(r, a, None, False),
        "minpoly-pc": lambda r: _flow_minpoly(r, a, None, True),
        "det-diag": lambda r: _flow_det_diag(r, a, None),
        "det-gamma": lambda r: _flow_det_gamma(r, a, None),
        "det-simple": lambda r: _flow_det_simple(r, a, None),
        "charpoly": lambda r: _flow_charpoly(r, a, None),
    }
    try:
        outcome = Accept(flows[pid](run))
        if not run.exhausted():
            outcome = Reject("malformed-transcript")
    except _RejectSignal as sig:
        outcome = Reject(sig.reason)
    except _BadChallengeSignal as sig:
        outcome = BadChallenge(sig.detail)
    if not isinstance(outcome, Reject) and outcome != transcript.outcome:
        outcome = Reject("verdict-mismatch")
    return outcome, run.vm


# -- budget accounting ----------------------------------------------------------


@dataclass
class BudgetReport:
    protocol_id: str
    n: int
    mu: int
    verifier_ops: int
    ops_bound: int | None
    sent: int
    sent_bound: int | None
    random_draws: int
    prover_draws: int

    @property
    def ops_ok(self):
        return self.ops_bound is None or self.verifier_ops <= self.ops_bound

    @property
    def sent_ok(self):
        return self.sent_bound is None or self.sent <= self.sent_bound

    @property
    def ok(self):
        return self.ops_ok and self.sent_ok


def budget_report(transcript: Transcript, a: SparseMatrix) -> BudgetReport:
    """Check a session's meters against the protocol's stated budget.

    mu is the cost of applying the public matrix once (2 nnz for sparse).
    The generator certificates exclude the committed generator from the
    communication count, since it is the protocol's output.
    """
    n = transcript.n
    mu = a.matvec_cost()
    pid = transcript.protocol_id
    log_term = 4 * max(1, math.ceil(math.log2(n))) if n > 1 else 4
    ops_bounds = {
        "fauv": mu + 17 * n,
        "fauv-merged": mu + 13 * n,
        "det-diag": mu + 15 * n + log_term,
        "det-gamma": mu + 13 * n + log_term,
    }
    sent = transcript.prover_meter.elements_sent
    sent_bound = None
    if pid in ("fauv", "fauv-merged"):
        commit = next((m for role, m in transcript.messages
                       if role == "prover" and isinstance(m, Commitment)), None)
        if commit is not None:
            sent -= commit.gen.wire_cost()
        sent_bound = 4 * n
    elif pid == "det-diag":
        sent_bound = 8 * n
    elif pid == "det-gamma":
        sent_bound = 5 * n
    return BudgetReport(
        protocol_id=pid,
        n=n,
        mu=mu,
        verifier_ops=transcript.verifier_meter.field_ops,
        ops_bound=ops_bounds.get(pid),
        sent=sent,
        sent_bound=sent_bound,
        random_draws=transcript.verifier_meter.random_draws,
        prover_draws=transcript.prover_meter.random_draws,
    )
