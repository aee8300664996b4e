"""Stage schedules: folding map nu, block map mu and block count xi."""

import re
from dataclasses import dataclass

from .errors import ScheduleOverflow
from .extension import OVERHEAD

DEFAULT_BUDGET = 1 << 29

KINDS = ("thm1-paper", "thm2-paper", "scaled")


@dataclass(frozen=True)
class Schedule:
    """Stage lengths for the constructions.

    ``thm1-paper``: nu(k) = 2^(2^k).
    ``thm2-paper``: nu(k) = 2^(2^k) + k, mu(k) = 2^(2^k - k), xi(k) = 2^k (2^(2^k) - 1).
    ``scaled`` with base B: nu(k) = B^(k+1) + k, mu(k) = B^k, xi(k) = B (B - 1).

    For the block schedules ``xi(k) * mu(k) == nu(k+1) - nu(k) - 1``.
    """

    kind: str
    base: int = 0
    bit_budget: int = DEFAULT_BUDGET
    overhead: int = OVERHEAD

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "scaled":
            B = self.base
            if B < 8 or B & (B - 1):
                raise ValueError("scaled schedules need a power of two base >= 8")

    @classmethod
    def paper_thm1(cls, bit_budget=DEFAULT_BUDGET):
        return cls("thm1-paper", bit_budget=bit_budget)

    @classmethod
    def paper_thm2(cls, bit_budget=DEFAULT_BUDGET):
        return cls("thm2-paper", bit_budget=bit_budget)

    @classmethod
    def scaled(cls, base, bit_budget=DEFAULT_BUDGET):
        return cls("scaled", base=base, bit_budget=bit_budget)

    @classmethod
    def parse(cls, text, theorem=1, bit_budget=DEFAULT_BUDGET):
        """``paper`` or ``scaled:B``; ``paper`` picks the double-exponential map of
        construction 1 or 2."""
        t = text.strip().lower()
        if t == "paper":
            return cls("thm1-paper" if theorem == 1 else "thm2-paper", bit_budget=bit_budget)
        if t in ("thm1-paper", "thm2-paper"):
            return cls(t, bit_budget=bit_budget)
        m = re.fullmatch(r"scaled[:(](\d+)\)?", t)
        if m:
            return cls.scaled(int(m.group(1)), bit_budget)
        raise ValueError(f"bad schedule spec {text!r}")

    def __str__(self):
        return f"scaled:{self.base}" if self.kind == "scaled" else self.kind

    @property
    def blocks(self):
        return self.kind != "thm1-paper"

    @property
    def is_paper(self):
        return self.kind != "scaled"

    def nu(self, k):
        if self.kind == "thm1-paper":
            return 1 << (1 << k)
        if self.kind == "thm2-paper":
            return (1 << (1 << k)) + k
        return self.base ** (k + 1) + k

    def mu(self, k):
        if self.kind == "thm2-paper":
            return 1 << ((1 << k) - k)
        if self.kind == "scaled":
            return self.base ** k
        raise ValueError("the zero-coding schedule has no block map")

    def xi(self, k):
        if self.kind == "thm2-paper":
            return (1 << k) * ((1 << (1 << k)) - 1)
        if self.kind == "scaled":
            return self.base * (self.base - 1)
        raise ValueError("the zero-coding schedule has no block count")

    def payload_len(self, k):
        return self.mu(k) - self.overhead

    def coded(self, k):
        """Does the gap after stage k carry payload blocks?"""
        return self.blocks and self.mu(k) > self.overhead

    @property
    def start_stage(self):
        """Least k whose gap carries payload blocks (0 for zero coding)."""
        if not self.blocks:
            return 0
        k = 0
        while not self.coded(k):
            k += 1
        return k

    @property
    def max_stage(self):
        """Largest N with nu(N) within the bit budget."""
        k = 0
        while self.nu(k + 1) <= self.bit_budget:
            k += 1
        return k

    def check_stages(self, N):
        if N > self.max_stage:
            raise ScheduleOverflow(
                f"nu({N}) exceeds the bit budget {self.bit_budget}"
                f" (at most {self.max_stage} stages fit)")

    def payload_offset(self, k):
        """Position in the target sequence where the stage-k payload starts."""
        off = 0
        for kk in range(self.start_stage, k):
            if self.coded(kk):
                off += self.xi(kk) * self.payload_len(kk)
        return off

    def to_json(self):
        d = {"kind": self.kind, "overhead": self.overhead, "bit_budget": self.bit_budget}
        if self.kind == "scaled":
            d["base"] = self.base
        return d
