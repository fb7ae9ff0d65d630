"""The ten acceptance criteria plus the crossed-module round trip.

Each criterion prints one ``PASS``/``FAIL`` line (with its runtime and
budget). Run directly with ``python tests/test_acceptance.py`` or via
pytest, where the lines are also collected into the terminal summary.
"""

import time

import pytest

from hopf2 import suite

#: criterion -> (n values, runtime budget in seconds)
CRITERIA = {
    "1 nucleus table": (suite.nucleus_table, (1, 2, 3), 1),
    "2 3-cocycle on G_3": (suite.cocycle, (3,), 5),
    "3 coherent 2-group from G_3": (suite.coherent_two_group, (3,), 60),
    "4 coquasigroup axioms and beta": (suite.coquasigroup_and_beta, (1, 2, 3), 10),
    "5 coassociator relation on k[G_3]": (suite.coassociator_relation, (3,), 5),
    "6 quasi-coassociative pair": (suite.quasi_coassociative_pair, (1, 2, 3), 10),
    "7 coherent Hopf 2-algebra": (suite.coherent_bundle, (1, 2, 3), 300),
    "8 duality on k[G_3]": (suite.duality, (3,), 60),
    "9 psi control": (suite.psi_control, (1, 2, 3), 5),
    "10 perturbation sensitivity": (lambda n: suite.perturbation(n, seed=0), (2,), 60),
    "round-trip crossed modules": (suite.round_trip, (0,), 60),
}

LINES = []


def evaluate(name):
    fn, ns, budget = CRITERIA[name]
    t0 = time.perf_counter()
    details = {}
    ok = True
    for n in ns:
        passed, detail = fn(n)
        details[n] = detail
        ok = ok and bool(passed)
    elapsed = time.perf_counter() - t0
    in_budget = elapsed < budget
    line = (f"{'PASS' if ok and in_budget else 'FAIL'}  {name:<38} "
            f"{elapsed:8.2f} s (budget {budget} s)")
    print(line)
    LINES.append(line)
    return ok, in_budget, details


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    ok, in_budget, details = evaluate(name)
    assert ok, details
    assert in_budget


if __name__ == "__main__":
    results = [evaluate(name) for name in CRITERIA]
    raise SystemExit(0 if all(ok and fast for ok, fast, _ in results) else 1)
