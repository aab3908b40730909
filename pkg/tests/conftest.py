import os
import sys

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from gpdcoset.builder import gen_random  # noqa: E402
from gpdcoset.groupoid import (closure, coproduct, cyclic_group, pair_groupoid,  # noqa: E402
                               product, symmetric_group)

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def s3_transposition():
    """S3 with the subgroup generated by the transposition swapping 0 and 1."""
    G = symmetric_group(3)
    return G, closure(G, [2])


# small seeded instances: at most 3 objects and groups of order at most 6
instances = st.integers(0, 10**6).map(lambda s: gen_random(s, 3, 6))

atoms = st.sampled_from([("pair", pair_groupoid, 3), ("cyclic", cyclic_group, 4),
                         ("sym", symmetric_group, 3)]).flatmap(
    lambda a: st.integers(1, a[2]).map(a[1]))


def _combine(children):
    return st.tuples(children, children).flatmap(
        lambda ab: st.sampled_from([product(*ab), coproduct(*ab)]))


groupoids = st.recursive(atoms, _combine, max_leaves=2).filter(lambda G: G.morphism_count <= 80)


@st.composite
def groupoid_with_wide_pair(draw, groups=groupoids):
    G = draw(groups)
    seeds = st.lists(st.integers(0, G.morphism_count - 1), max_size=2)
    return G, closure(G, draw(seeds), make_wide=True), closure(G, draw(seeds), make_wide=True)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l[1:l.index("/")])):
            terminalreporter.write_line(line)
