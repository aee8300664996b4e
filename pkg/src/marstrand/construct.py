"""Stage machines building a radius r whose products a_i * r carry coded content.

``build_thm1`` codes long zero runs into a_i * r (zero coding);
``build_thm2`` codes consecutive blocks of a target sequence into a_i * r
(block coding).  Both fold oracle bits into r at positions nu(k+1) - 1.

Stage k+1 turns the prefix x_k (length nu(k)) into x_{k+1} (length nu(k+1)).
"""

import hashlib
from dataclasses import dataclass, field

from gmpy2 import mpz

from .bitcore import BitString, unpair
from .errors import BlockOverflow, PrecisionExhausted, ScheduleOverflow
from .extension import (_check_multiplier, block_capacity, certify_raw,
                        extend_raw, zeros_schedule)
from .streams import as_stream
from .target import as_bit_source

_INLINE_BITS = 4096


def _bits_json(b):
    if b is None:
        return None
    if len(b) <= _INLINE_BITS:
        return b.to_text()
    digest = hashlib.sha256(b.to_text().encode()).hexdigest()
    return {"len": len(b), "sha256": digest}


@dataclass(frozen=True)
class BlockTrace:
    """Lengths recorded for one coded block inside a stage."""

    j: int
    rho_len: int
    tau_prime_len: int
    tau_len: int
    x_len: int

    def to_json(self):
        return [self.j, self.rho_len, self.tau_prime_len, self.tau_len, self.x_len]


@dataclass(frozen=True)
class StageTrace:
    """Record of stage ``k``, which grows x_{k-1} into x_k (so ``x_len == nu(k)``).

    ``gap`` is k-1, the index used by the schedule maps for this stage.
    For zero coding ``rho``/``tau`` hold the extension; for block coding the
    per-block lengths are in ``blocks``.
    """

    k: int
    i: int
    n: int
    s: int
    rho: BitString = None
    tau: BitString = None
    tau_prime_len: int = 0
    truncated: bool = False
    skipped: bool = False
    coded: bool = True
    x_len: int = 0
    last_bit: int = 0
    precision: int = 0
    blocks: tuple = field(default=())

    @property
    def gap(self):
        return self.k - 1

    def to_json(self):
        return {
            "k": self.k, "i": self.i, "n": self.n, "s": self.s,
            "rho": _bits_json(self.rho), "tau": _bits_json(self.tau),
            "tau_prime_len": self.tau_prime_len, "truncated": self.truncated,
            "skipped": self.skipped, "coded": self.coded, "x_len": self.x_len,
            "last_bit": self.last_bit, "precision": self.precision,
            "blocks": [b.to_json() for b in self.blocks],
        }


def attended(stage, count):
    """Requirement index attended at a stage: first pairing component mod count."""
    i, n = unpair(stage)
    return i % count, n


def _prepare(conditions):
    conds = [as_stream(c) for c in conditions]
    if not conds:
        raise ValueError("at least one condition is required")
    for a in conds:
        if a.exact != 0:
            _check_multiplier(a)
    return conds


def _pad_to(xv, xl, target, d):
    """Zero-pad to length target-1 then append the bit d."""
    return (xv << (target - xl)) | d


def build_thm1(A, conditions, sched, N, bit_budget=None):
    """Zero-coding construction; returns ``(x, traces)``."""
    A = as_bit_source(A)
    conds = _prepare(conditions)
    sched.check_stages(N)
    if bit_budget is not None and N and sched.nu(N) > bit_budget:
        raise ScheduleOverflow(f"nu({N}) exceeds the bit budget {bit_budget}")
    xv, xl = mpz(0), 0
    traces = []
    for k in range(N):
        stage = k + 1
        idx, n = attended(stage, len(conds))
        a = conds[idx]
        target = sched.nu(stage)
        d = int(A(k))
        if a.exact == 0:
            xv, xl = _pad_to(xv, xl, target, d), target
            traces.append(StageTrace(stage, idx, n, 0, skipped=True, coded=False,
                                     x_len=xl, last_bit=d))
            continue
        if sched.is_paper:
            s = zeros_schedule(k, sched.nu)
        else:
            s = block_capacity(xl, target)
        rv, rl, tv, tl = extend_raw(a, xv, xl, 0, s)
        tau_v, tau_l = tv << s, tl + s
        prec = certify_raw(a, rv, rl, tau_v, tau_l)
        if prec is None:
            raise PrecisionExhausted(f"stage {stage}: containment not certified")
        truncated = rl >= target
        if truncated:
            xv = ((rv >> (rl - target + 1)) << 1) | d
        else:
            xv = _pad_to(rv, rl, target, d)
        xl = target
        traces.append(StageTrace(
            stage, idx, n, s,
            rho=BitString.from_int(rv, rl), tau=BitString.from_int(tau_v, tau_l),
            tau_prime_len=tl, truncated=truncated, x_len=xl, last_bit=d,
            precision=prec))
    return BitString.from_int(xv, xl), traces


def recover_A(x, sched, N):
    """Bits folded at positions nu(k+1) - 1 for k < N."""
    return BitString([x[sched.nu(k + 1) - 1] for k in range(N)])


def recover_parity(x, sched, N):
    """Split the folded bits by stage parity into the A and phi prefixes."""
    bits = recover_A(x, sched, N)
    return bits[0::2], bits[1::2]


def stage_payload(T, sched, k):
    """The whole payload T_k of gap k as one word."""
    if not sched.coded(k):
        return BitString()
    off = sched.payload_offset(k)
    return T.segment(off, off + sched.xi(k) * sched.payload_len(k))


def partition_T(T, sched, upto_stage):
    """Blocks T^j_k for every coded gap k <= upto_stage, as ``{k: [blocks]}``."""
    if not sched.blocks:
        raise ValueError("partitioning needs a block schedule")
    out = {}
    for k in range(sched.start_stage, upto_stage + 1):
        if not sched.coded(k):
            continue
        m = sched.payload_len(k)
        off = sched.payload_offset(k)
        out[k] = [T.segment(off + j * m, off + (j + 1) * m) for j in range(sched.xi(k))]
    return out


def build_thm2(A, phi, conditions, T, sched, N, bit_budget=None):
    """Block-coding construction; returns ``(x, traces)``.

    The bit closing stage k+1 is A(k/2) for even k and phi((k-1)/2) for odd k.
    """
    if not sched.blocks:
        raise ValueError("block coding needs a thm2-paper or scaled schedule")
    A, phi = as_bit_source(A), as_bit_source(phi)
    conds = _prepare(conditions)
    sched.check_stages(N)
    if bit_budget is not None and N and sched.nu(N) > bit_budget:
        raise ScheduleOverflow(f"nu({N}) exceeds the bit budget {bit_budget}")
    xv, xl = mpz(0), 0
    traces = []
    for k in range(N):
        stage = k + 1
        idx, n = attended(stage, len(conds))
        a = conds[idx]
        target = sched.nu(stage)
        d = int(A(k // 2)) if k % 2 == 0 else int(phi((k - 1) // 2))
        coded = sched.coded(k)
        if not coded or a.exact == 0:
            xv, xl = _pad_to(xv, xl, target, d), target
            traces.append(StageTrace(stage, idx, n, 0, skipped=coded, coded=False,
                                     x_len=xl, last_bit=d))
            continue
        if xl != sched.nu(k):
            raise ValueError(f"prefix length {xl} != nu({k}) at a coded stage")
        mu, blen = sched.mu(k), sched.payload_len(k)
        off = sched.payload_offset(k)
        blocks = []
        prec = 0
        for j in range(1, sched.xi(k) + 1):
            b = T.segment(off + (j - 1) * blen, off + j * blen)
            rv, rl, tv, tl = extend_raw(a, xv, xl, b.value, blen)
            limit = xl + mu
            if rl > limit:
                raise BlockOverflow(f"stage {stage} block {j}: {rl} > {limit}")
            tau_v = (tv << blen) | b.value
            p = certify_raw(a, rv, rl, tau_v, tl + blen)
            if p is None:
                raise PrecisionExhausted(f"stage {stage} block {j}: not certified")
            prec = max(prec, p)
            xv, xl = rv << (limit - rl), limit
            blocks.append(BlockTrace(j, rl, tl, tl + blen, xl))
        if xl != target - 1:
            raise BlockOverflow(f"stage {stage} ended at {xl}, expected {target - 1}")
        xv, xl = (xv << 1) | d, target
        traces.append(StageTrace(stage, idx, n, sched.xi(k) * blen,
                                 tau_prime_len=blocks[0].tau_prime_len,
                                 x_len=xl, last_bit=d, precision=prec,
                                 blocks=tuple(blocks)))
    return BitString.from_int(xv, xl), traces
