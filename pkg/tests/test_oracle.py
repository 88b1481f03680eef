"""Cross-checks the Groebner/minimal-resolution pipeline against an
independent dense-linear-algebra oracle that never touches a Groebner basis."""

from citor.homres import tor
from citor.oracle import oracle_tor_dimensions


def graded_dims(M, N, imax, bound):
    out = []
    for i in range(imax + 1):
        T = tor(M, N, i)
        out.append([T.hilbert.value(d) for d in range(bound + 1)])
    return out


def test_oracle_matches_symbolic_node(node_modules):
    pairs = [("rx", "rx2"), ("rx", "ry"), ("k", "k"), ("rxpy", "rx")]
    for a, b in pairs:
        M, N = node_modules[a], node_modules[b]
        assert oracle_tor_dimensions(M, N, 4, 6) == graded_dims(M, N, 4, 6)


def test_oracle_matches_symbolic_dim0(dim0_modules):
    M = dim0_modules["k"]
    assert oracle_tor_dimensions(M, M, 4, 6) == graded_dims(M, M, 4, 6)


def test_oracle_balanced(node_modules):
    M, N = node_modules["rx"], node_modules["rx2"]
    assert oracle_tor_dimensions(M, N, 3, 6) == oracle_tor_dimensions(N, M, 3, 6)
