import json

import pytest

from ipsketch.cli import main
from ipsketch.serialize import load, method_of
from ipsketch.sparsevec import SparseVector, write_vector


@pytest.fixture
def tables(tmp_path):
    (tmp_path / "a.csv").write_text("key,value\n1,6.0\n3,2.0\n4,6.0\n5,1.0\n6,4.0\n7,2.0\n"
                                    "8,2.0\n9,8.0\n11,3.0\n")
    (tmp_path / "b.csv").write_text("2\n4\n5\n8\n10\n11\n12\n15\n16\n")
    return tmp_path


def run(*argv):
    return main([str(a) for a in argv])


def test_join_stats_pipeline(tables, capsys):
    common = ["--n", 16, "--m", 20000, "--L", 10 ** 6, "--seed", 3]
    assert run("sketch", tables / "a.csv", "--column", "value", "--header", *common,
               "--out", tables / "va.sk") == 0
    assert run("sketch", tables / "a.csv", "--column", "key", "--header", *common,
               "--out", tables / "ka.sk") == 0
    assert run("sketch", tables / "b.csv", "--column", "key", *common,
               "--out", tables / "kb.json") == 0
    capsys.readouterr()
    assert run("join-stats", tables / "va.sk", tables / "ka.sk", tables / "kb.json") == 0
    st = json.loads(capsys.readouterr().out)
    assert abs(st["join_size"] - 4) < 0.5 and abs(st["mean_a"] - 3) < 0.5


def test_sketch_and_estimate_vectors(tmp_path, capsys):
    write_vector(SparseVector(50, [1, 2, 3], [1.0, 2.0, 3.0]), tmp_path / "a.txt")
    write_vector(SparseVector(50, [2, 3, 4], [1.0, 1.0, 1.0]), tmp_path / "b.txt")
    for method in ("MH", "WMH", "KMV", "JL", "CS"):
        for name in ("a", "b"):
            assert run("sketch", tmp_path / f"{name}.txt", "--method", method.lower(), "--m", 64,
                       "--L", 10000, "--out", tmp_path / f"{name}.{method}") == 0
        assert method_of(load(tmp_path / f"a.{method}")) == method
        capsys.readouterr()
        assert run("estimate", tmp_path / f"a.{method}", tmp_path / f"b.{method}") == 0
        float(capsys.readouterr().out)


def test_validation_errors_exit_2(tmp_path, capsys):
    write_vector(SparseVector(5, [1], [1.0]), tmp_path / "v.txt")
    (tmp_path / "bad.txt").write_text("no header\n")
    assert run("sketch", tmp_path / "bad.txt", "--m", 4, "--out", tmp_path / "x") == 2
    assert run("sketch", tmp_path / "missing.txt", "--m", 4, "--out", tmp_path / "x") == 2
    assert run("sketch", tmp_path / "v.txt", "--m", 0, "--out", tmp_path / "x") == 2
    run("sketch", tmp_path / "v.txt", "--m", 4, "--L", 1000, "--seed", 1, "--out", tmp_path / "s1")
    run("sketch", tmp_path / "v.txt", "--m", 4, "--L", 1000, "--seed", 2, "--out", tmp_path / "s2")
    assert run("estimate", tmp_path / "s1", tmp_path / "s2") == 2
    assert run("estimate", tmp_path / "s1", tmp_path / "v.txt") == 2
    assert run("synth-bench", "--n", 100, "--nnz", 80, "--overlap", 0.5) == 2
    assert run("synth-bench", "--methods", "foo", "--trials", 1) == 2
    with pytest.raises(SystemExit) as exc:
        run("synth-bench", "--budgets", "x")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("frobnicate")
    assert exc.value.code == 2


def test_synth_bench_is_reproducible(tmp_path, monkeypatch):
    monkeypatch.setenv("IPSKETCH_THREADS", "2")
    args = ["synth-bench", "--n", 2000, "--nnz", 100, "--overlap", "0.1,0.5", "--trials", 2,
            "--budgets", "60,120", "--methods", "wmh,jl,mh,kmv,cs", "--seed", 9, "--L", 100000]
    assert run(*args, "--out", tmp_path / "r1.csv") == 0
    assert run(*args, "--out", tmp_path / "r2.csv") == 0
    text = (tmp_path / "r1.csv").read_text()
    assert text == (tmp_path / "r2.csv").read_text()
    lines = text.splitlines()
    assert lines[0] == "method,budget,m,trial,truth,estimate,scaled_error,gamma,seed"
    assert len(lines) == 1 + 2 * 5 * 2 * 2
