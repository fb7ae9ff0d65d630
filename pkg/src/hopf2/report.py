"""Check results and reports."""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .linear import label_to_json, maps_diff_mod, scalar_str, vsub

WITNESS_TERMS = 6


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None

    def to_json(self):
        out = {"name": self.name, "pass": bool(self.passed)}
        if not self.passed:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    subject: str
    checks: list = field(default_factory=list)
    timing_ms: float = 0.0

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))

    def to_json(self):
        return {
            "subject": self.subject,
            "checks": [c.to_json() for c in self.checks],
            "timing": round(self.timing_ms, 3),
        }

    def table(self):
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"{self.subject}  ({self.timing_ms:.0f} ms)"]
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            line = f"  {c.name:<{width}}  {mark}"
            if not c.passed and c.witness is not None:
                line += f"  witness={c.witness}"
            lines.append(line)
        return "\n".join(lines)


@contextmanager
def reporting(subject):
    rep = Report(subject)
    t0 = time.perf_counter()
    try:
        yield rep
    finally:
        rep.timing_ms = (time.perf_counter() - t0) * 1000.0


def vector_json(v, limit=WITNESS_TERMS):
    items = list(v.items())[:limit]
    return [[label_to_json(k), scalar_str(c)] for k, c in items]


def diff_witness(x, lhs, rhs):
    return {"input": label_to_json(x), "lhs": vector_json(lhs), "rhs": vector_json(rhs),
            "difference": vector_json(vsub(lhs, rhs))}


def check_maps(name, f, g):
    x = f.first_difference(g)
    if x is None:
        return Check(name, True)
    return Check(name, False, diff_witness(x, f.col(x), g.col(x)))


def check_maps_mod(name, f, g, q):
    x = maps_diff_mod(f, g, q)
    if x is None:
        return Check(name, True)
    return Check(name, False, diff_witness(x, q.project(f.col(x)), q.project(g.col(x))))


def check_flag(name, ok, witness=None):
    return Check(name, bool(ok), None if ok else witness)
