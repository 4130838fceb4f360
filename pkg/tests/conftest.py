import numpy as np
import pytest
from hypothesis import settings

from ipsketch.sparsevec import SparseVector

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def random_pair(rng, n, nnz_a, nnz_b, shared, low=-5.0, high=5.0):
    """Two random vectors in dimension n with exactly ``shared`` common indices."""
    perm = rng.permutation(n)[: nnz_a + nnz_b - shared] + 1
    ia = perm[:nnz_a]
    ib = np.concatenate([perm[:shared], perm[nnz_a:]])

    def vals(k):
        v = rng.uniform(low, high, size=k)
        v[v == 0] = 1.0
        return v

    return SparseVector(n, ia, vals(nnz_a)), SparseVector(n, ib, vals(nnz_b))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.summary_lines():
            terminalreporter.write_line(line)
