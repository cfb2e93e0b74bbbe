import sys
from itertools import product

import pytest

from framedquiver.moduli import ModuliSpec, is_nonempty
from framedquiver.quiver import kronecker_quiver, linear_quiver

QUIVERS = {
    "A1": linear_quiver(1),
    "A2": linear_quiver(2),
    "A3": linear_quiver(3),
    "K2": kronecker_quiver(),
}


def small_specs(max_d=2, max_n=2, quivers=QUIVERS, nonempty=True):
    """(name, spec) with sum(d) <= max_d and entries of n <= max_n."""
    out = []
    for name, q in quivers.items():
        for d in product(range(max_d + 1), repeat=q.size):
            if sum(d) > max_d:
                continue
            for n in product(range(max_n + 1), repeat=q.size):
                spec = ModuliSpec(q, d, n)
                if nonempty and not is_nonempty(spec):
                    continue
                out.append((name, spec))
    return out


def spec_id(item):
    name, spec = item
    return f"{name}-d{''.join(map(str, spec.d))}-n{''.join(map(str, spec.n))}"


@pytest.fixture(params=list(QUIVERS))
def quiver(request):
    return QUIVERS[request.param]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
