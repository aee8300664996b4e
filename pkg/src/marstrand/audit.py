"""Post-hoc verification of finished constructions.

Structural checks (lengths, folded bits, containments, block decoding, cost
bounds) are exact and decide ``AuditReport.passed``.  Density profiles are
empirical and reported separately as statistical checks.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpz

from .bitcore import BitString
from .complexity import lz_estimate
from .construct import recover_A, recover_parity, stage_payload
from .dyadic import largest_dyadic_raw, mul_point_raw, scale_inner_raw
from .errors import DecodeMismatch
from .extension import _cmp
from .streams import as_stream
from .target import as_bit_source

COST_BOUND = 7
AUDIT_GUARD = 8
DENSITY_CAP = 1 << 20
DENSITY_TOLERANCE = Fraction(15, 100)


@dataclass
class BuildInputs:
    """Everything a build was run with, for re-checking its output."""

    theorem: int
    sched: object
    conditions: list
    N: int
    A: object = None
    phi: object = None
    T: object = None

    def __post_init__(self):
        self.conditions = [as_stream(c) for c in self.conditions]
        if self.A is not None:
            self.A = as_bit_source(self.A)
        if self.phi is not None:
            self.phi = as_bit_source(self.phi)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    statistical: bool = False


@dataclass
class AuditReport:
    theorem: int = 0
    containment: list = field(default_factory=list)
    cost_deltas: list = field(default_factory=list)
    cost_failures: list = field(default_factory=list)
    interleave: list = field(default_factory=list)
    truncations: list = field(default_factory=list)
    recovered: dict = field(default_factory=dict)
    decode: list = field(default_factory=list)
    decode_mismatches: int = 0
    density: dict = field(default_factory=dict)
    target_density: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        """True iff every structural (non-statistical) check passed."""
        return all(c.passed for c in self.checks if not c.statistical)

    @property
    def statistical_passed(self):
        return all(c.passed for c in self.checks if c.statistical)

    def check(self, name, ok, detail="", statistical=False):
        self.checks.append(CheckResult(name, bool(ok), detail, statistical))

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        def prof(p):
            return [[n, float(r)] for n, r in p]
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "statistical_passed": self.statistical_passed,
            "checks": [c.__dict__ for c in self.checks],
            "containment": self.containment,
            "cost_deltas_max": max(self.cost_deltas, default=None),
            "cost_deltas_count": len(self.cost_deltas),
            "cost_failures": self.cost_failures,
            "interleave": self.interleave,
            "truncations": self.truncations,
            "recovered": self.recovered,
            "decode": self.decode,
            "decode_mismatches": self.decode_mismatches,
            "density": {str(i): prof(p) for i, p in self.density.items()},
            "target_density": prof(self.target_density),
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def profiles_csv(self):
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["series", "n", "khat_over_n"])
        for i, p in sorted(self.density.items()):
            for n, r in p:
                w.writerow([f"product{i}", n, f"{float(r):.6f}"])
        for n, r in self.target_density:
            w.writerow(["target", n, f"{float(r):.6f}"])
        return out.getvalue()


def cost_deltas(traces, a=None):
    """``|len(tau'_{j+1}) - len(tau_j)|`` for consecutive blocks of each stage.

    ``a`` is accepted for symmetry with the other audits; the lengths come
    from the traces.
    """
    out = []
    for t in traces:
        for prev, nxt in zip(t.blocks, t.blocks[1:]):
            out.append(abs(nxt.tau_prime_len - prev.tau_len))
    return out


def _prefix_value(x, n):
    return x.value >> (len(x) - n)


def _tau_prime_raw(a, v, m):
    """Left end of the largest dyadic inside the inner image ``a * [v/2^m]``."""
    L, H, E = scale_inner_raw(a, v, v + 1, m)
    return largest_dyadic_raw(L, H, E)


def block_positions(x, a, sched, k):
    """Recompute ``len(tau'_j)`` for every block of gap k from prefixes of x."""
    a = as_stream(a)
    base, mu = sched.nu(k), sched.mu(k)
    out = []
    for j in range(1, sched.xi(k) + 1):
        m = base + (j - 1) * mu
        _, tk = _tau_prime_raw(a, _prefix_value(x, m), m)
        out.append(tk)
    return out


def _decode_raw(x, a, sched, k, trace=None):
    end = sched.nu(k + 1) - 1
    if len(x) < end + 1:
        raise ValueError(f"prefix does not cover stage {k + 1}")
    dv, dl = _tau_prime_raw(a, _prefix_value(x, end), end)
    if trace is not None:
        starts = [b.tau_prime_len for b in trace.blocks]
    else:
        starts = block_positions(x, a, sched, k)
    blen = sched.payload_len(k)
    out = mpz(0)
    for st in starts:
        if st + blen > dl:
            raise DecodeMismatch(0, "payload runs past the decoded prefix")
        piece = (dv >> (dl - st - blen)) & ((mpz(1) << blen) - 1)
        out = (out << blen) | piece
    return BitString.from_int(out, blen * len(starts)), (dv, dl), starts


def decode_blocks(x, a, sched, k, trace=None, expected=None):
    """Read the payload T_k of gap k back out of the product a * x.

    Without a trace, every block start is recomputed exactly from the
    prefixes of x.  With ``expected`` (a word or a target sequence) the result
    is compared and :class:`DecodeMismatch` names the first bad bit.
    """
    a = as_stream(a)
    payload, _, _ = _decode_raw(x, a, sched, k, trace)
    if expected is not None:
        if not isinstance(expected, BitString):
            expected = stage_payload(expected, sched, k)
        idx = first_difference(payload, expected)
        if idx is not None:
            raise DecodeMismatch(idx)
    return payload


def first_difference(u, v):
    """Index of the first differing bit (length mismatch counts), else None."""
    n = min(len(u), len(v))
    diff = _prefix_value(u, n) ^ _prefix_value(v, n) if n else mpz(0)
    if diff:
        return n - int(diff.bit_length())
    return None if len(u) == len(v) else n


def point_in_coding_interval(a, x, tau_v, tau_l, start=None, cap=1 << 16):
    """Certify ``a * 0.x`` lies strictly inside the coding interval of tau.

    Returns the precision used, or ``None`` when the point is outside or the
    escalation cap is reached.
    """
    a = as_stream(a)
    n = start if start is not None else tau_l + AUDIT_GUARD
    top = n + cap
    while n <= top:
        lo, hi, e = mul_point_raw(a, x.value, len(x), n)
        if _cmp(lo, e, tau_v, tau_l) > 0 and _cmp(hi, e, tau_v + 1, tau_l) < 0:
            return n
        if _cmp(hi, e, tau_v, tau_l) <= 0 or _cmp(lo, e, tau_v + 1, tau_l) >= 0:
            return None
        n *= 2
    return None


def _neg_log2_ceil(a):
    """ceil(-log2 a) for a in (0, 1], from a certified lower bound."""
    if a.exact is not None:
        q = Fraction(1) / a.exact
        k = 0
        while (1 << k) < q:
            k += 1
        return k
    lo, _, e = a._enclose(64)
    k = 0
    while (lo << k) < (mpz(1) << e):
        k += 1
    return k


def _profile_point(word, cap):
    n = min(len(word), cap)
    s = str(word[:n]) if n < len(word) else str(word)
    return n, Fraction(lz_estimate(s), n)


def verify_build(x, traces, inputs, density=True, density_cap=DENSITY_CAP):
    """Run every structural audit and the density profiles; never raises."""
    rep = AuditReport(theorem=inputs.theorem)
    sched, N = inputs.sched, inputs.N
    if N == 0 and len(x) == 0 and not traces:
        return rep
    conds = inputs.conditions

    # length law
    lens_ok = len(x) == sched.nu(N) and len(traces) == N and all(
        t.x_len == sched.nu(t.k) for t in traces)
    rep.check("length_law", lens_ok, f"len(x)={len(x)}, nu(N)={sched.nu(N)}")

    # folded oracle bits
    if inputs.theorem == 1:
        got = recover_A(x, sched, N)
        rep.recovered["A"] = str(got)
        if inputs.A is not None:
            want = BitString([inputs.A(k) for k in range(N)])
            rep.check("folding", got == want, f"recovered {got}, expected {want}")
    else:
        ga, gp = recover_parity(x, sched, N)
        rep.recovered["A"], rep.recovered["phi"] = str(ga), str(gp)
        if inputs.A is not None and inputs.phi is not None:
            wa = BitString([inputs.A(k) for k in range(len(ga))])
            wp = BitString([inputs.phi(k) for k in range(len(gp))])
            rep.check("parity_folding", ga == wa and gp == wp,
                      f"A {ga} vs {wa}; phi {gp} vs {wp}")

    if inputs.theorem == 1:
        _audit_thm1(rep, x, traces, conds, density, density_cap)
    else:
        _audit_thm2(rep, x, traces, inputs, density, density_cap)
    return rep


def _audit_thm1(rep, x, traces, conds, density, cap):
    for t in traces:
        if t.skipped:
            continue
        a = conds[t.i]
        if t.truncated:
            rep.truncations.append(t.k)
            ok = t.rho.prefix(t.x_len - 1).is_prefix_of(x)
            rep.check(f"truncated_prefix_stage{t.k}", ok)
            continue
        prec = point_in_coding_interval(a, x, t.tau.value, len(t.tau))
        rep.containment.append({"stage": t.k, "i": t.i, "precision": prec,
                                "ok": prec is not None})
        rep.check(f"containment_stage{t.k}", prec is not None,
                  "product extends tau'0^s" if prec else "not certified")
        zeros_ok = t.tau.endswith(BitString.zeros(t.s))
        rep.check(f"zero_run_stage{t.k}", zeros_ok)
    if not density:
        return
    for i in range(len(conds)):
        pts = [_profile_point(t.tau, cap) for t in traces
               if t.i == i and not t.skipped and not t.truncated]
        if pts:
            rep.density[i] = pts
            tail = [r for _, r in pts[1:]]
            mono = all(b <= a for a, b in zip(tail, tail[1:]))
            rep.check(f"density_nonincreasing_cond{i}", mono,
                      "profile along the attending stages", statistical=True)


def _audit_thm2(rep, x, traces, inputs, density, cap):
    sched, conds, T = inputs.sched, inputs.conditions, inputs.T
    deltas = cost_deltas(traces)
    rep.cost_deltas = deltas
    for t in traces:
        if not t.coded:
            continue
        k = t.gap
        a = conds[t.i]
        for prev, nxt in zip(t.blocks, t.blocks[1:]):
            dlt = abs(nxt.tau_prime_len - prev.tau_len)
            if dlt > COST_BOUND:
                rep.cost_failures.append({"stage": t.k, "j": nxt.j, "delta": dlt})
        try:
            payload, (dv, dl), starts = _decode_raw(x, a, sched, k, t)
        except DecodeMismatch as exc:
            rep.decode.append({"stage": t.k, "ok": False, "first_mismatch": exc.index})
            rep.decode_mismatches += 1
            continue
        # containment of the final product in the last block's coding interval
        last = t.blocks[-1]
        tau_v = dv >> (dl - last.tau_len)
        prec = point_in_coding_interval(a, x, tau_v, last.tau_len)
        rep.containment.append({"stage": t.k, "i": t.i, "precision": prec,
                                "ok": prec is not None})
        rep.check(f"containment_stage{t.k}", prec is not None)
        bound = _neg_log2_ceil(a) + sched.nu(k) + 2
        sig = starts[0]
        rep.interleave.append({"stage": t.k, "sigma_len": sig, "bound": bound,
                               "tail": dl - last.tau_len})
        rep.check(f"interleave_prefix_stage{t.k}", sig <= bound,
                  f"len(sigma)={sig} <= {bound}")
        if T is not None:
            want = stage_payload(T, sched, k)
            idx = first_difference(payload, want)
            rep.decode.append({"stage": t.k, "ok": idx is None, "first_mismatch": idx})
            if idx is not None:
                rep.decode_mismatches += 1
        if density and dl <= cap and T is not None:
            d = BitString.from_int(dv, dl)
            n, r = _profile_point(d, cap)
            _, rt = _profile_point(T.bits(n), cap)
            rep.density.setdefault(t.i, []).append((n, r))
            rep.target_density.append((n, rt))
            rep.check(f"density_match_stage{t.k}", abs(r - rt) <= DENSITY_TOLERANCE,
                      f"product {float(r):.3f} vs target {float(rt):.3f}",
                      statistical=True)
    rep.check("cost_bound", not rep.cost_failures,
              f"max delta {max(deltas, default=0)} (bound {COST_BOUND})")
    rep.check("block_decode", rep.decode_mismatches == 0,
              f"{rep.decode_mismatches} stage(s) with mismatches")
