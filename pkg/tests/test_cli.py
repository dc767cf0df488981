import json

from minmatch.cli import main
from minmatch.generators import gen_gk, gen_named, gen_random_cubic
from minmatch.graphio import write_graph6


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        assert monkeypatch is not None
        import io
        import sys as _sys
        monkeypatch.setattr(_sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_k33_line(capsys, monkeypatch):
    line = write_graph6(gen_named("K33"))
    code, out, _ = run(capsys, ["solve"], stdin=line + "\n", monkeypatch=monkeypatch)
    assert code == 0
    payload = json.loads(out.strip())
    assert payload["matching_size"] == 3
    assert payload["k33_special"] is True


def test_solve_rejects_degree4(capsys, monkeypatch):
    code, out, err = run(capsys, ["solve"], stdin="D~{\n", monkeypatch=monkeypatch)
    assert code == 2
    assert out == ""
    assert "degree" in err


def test_solve_per_component(capsys, monkeypatch):
    # K2 plus C4 in one graph6 line
    from minmatch.graph import Graph

    g = Graph.from_edges([(0, 1), (2, 3), (3, 4), (4, 5), (2, 5)])
    line = write_graph6(g)
    code, out, _ = run(
        capsys, ["solve", "--per-component"], stdin=line + "\n", monkeypatch=monkeypatch
    )
    assert code == 0
    payload = json.loads(out.strip())
    assert payload["matching_size"] == 3
    assert payload["components"] == 2
    code, _, _ = run(capsys, ["solve"], stdin=line + "\n", monkeypatch=monkeypatch)
    assert code == 2


def test_exact_known_values(capsys, monkeypatch):
    lines = (
        write_graph6(gen_named("K4"))
        + "\n"
        + write_graph6(gen_named("C_n", 9))
        + "\n"
    )
    code, out, _ = run(capsys, ["exact"], stdin=lines, monkeypatch=monkeypatch)
    assert code == 0
    gammas = [json.loads(l)["gamma"] for l in out.strip().splitlines()]
    assert gammas == [2, 3]


def test_exact_g4(capsys, monkeypatch):
    line = write_graph6(gen_gk(4).graph)
    code, out, _ = run(capsys, ["exact"], stdin=line + "\n", monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out.strip())["gamma"] == 10


def test_exact_budget_exit(capsys, monkeypatch):
    line = write_graph6(gen_gk(3).graph)
    code, out, err = run(
        capsys, ["exact", "--budget", "3"], stdin=line + "\n", monkeypatch=monkeypatch
    )
    assert code == 4
    payload = json.loads(out.strip())
    assert payload["exact"] is False


def test_exact_budget_from_env(capsys, monkeypatch):
    monkeypatch.setenv("MMM_ORACLE_BUDGET", "3")
    line = write_graph6(gen_gk(3).graph)
    code, _, _ = run(capsys, ["exact"], stdin=line + "\n", monkeypatch=monkeypatch)
    assert code == 4


def test_gen_gk3(capsys):
    code, out, _ = run(capsys, ["gen", "--gk", "3"])
    assert code == 0
    from minmatch.graphio import parse_graph6

    g = parse_graph6(out.strip())
    assert g.n == 18 and g.is_cubic()


def test_gen_enumerate_count(capsys):
    code, out, _ = run(capsys, ["gen", "--enumerate", "5"])
    assert code == 0
    from minmatch.generators import enumerate_connected_subcubic

    want = sum(1 for _ in enumerate_connected_subcubic(5))
    assert len(out.strip().splitlines()) == want


def test_gen_random_deterministic(capsys):
    code1, out1, _ = run(capsys, ["gen", "--random-cubic", "50", "7"])
    code2, out2, _ = run(capsys, ["gen", "--random-cubic", "50", "7"])
    assert code1 == code2 == 0
    assert out1 == out2


def test_gen_bad_parameters(capsys):
    code, _, err = run(capsys, ["gen", "--cycle", "2"])
    assert code == 2
    code, _, err = run(capsys, ["gen"])
    assert code == 2


def test_verify_small_batch(capsys, monkeypatch):
    lines = "".join(
        write_graph6(gen_random_cubic(20, seed)) + "\n" for seed in range(8)
    )
    code, out, _ = run(
        capsys, ["verify", "--with-oracle"], stdin=lines, monkeypatch=monkeypatch
    )
    assert code == 0
    report = json.loads(out.strip())
    assert report["total"] == 8 and report["passed"] == 8
    assert report["failures"] == []
    assert report["ratio_stats"]["bound_ratio"]["max"] <= 1.0


def test_verify_chain_family_with_oracle(capsys, monkeypatch):
    lines = "".join(write_graph6(gen_gk(k).graph) + "\n" for k in range(1, 5))
    code, out, _ = run(
        capsys, ["verify", "--with-oracle"], stdin=lines, monkeypatch=monkeypatch
    )
    assert code == 0
    report = json.loads(out.strip())
    assert report["passed"] == 4 and not report["failures"]


def test_verify_enumerated_corpus_with_oracle(capsys, monkeypatch):
    from minmatch.generators import enumerate_connected_subcubic

    lines = "".join(
        write_graph6(g) + "\n" for g in enumerate_connected_subcubic(5)
    )
    code, out, _ = run(
        capsys, ["verify", "--with-oracle"], stdin=lines, monkeypatch=monkeypatch
    )
    assert code == 0
    report = json.loads(out.strip())
    assert report["total"] == report["passed"] and not report["failures"]


def test_verify_jobs_deterministic(capsys, monkeypatch):
    lines = "".join(
        write_graph6(gen_random_cubic(16, seed)) + "\n" for seed in range(10)
    )
    _, out1, _ = run(capsys, ["verify"], stdin=lines, monkeypatch=monkeypatch)
    _, out2, _ = run(capsys, ["verify", "--jobs", "2"], stdin=lines, monkeypatch=monkeypatch)
    assert out1 == out2


def test_verify_plot_data(tmp_path, capsys, monkeypatch):
    lines = write_graph6(gen_named("K33")) + "\n" + write_graph6(gen_named("CUBE_Q3")) + "\n"
    target = tmp_path / "plot.csv"
    code, _, _ = run(
        capsys,
        ["verify", "--plot-data", str(target)],
        stdin=lines,
        monkeypatch=monkeypatch,
    )
    assert code == 0
    rows = target.read_text().strip().splitlines()
    assert rows[0] == "n,matching_size,lambda,gamma_lower"
    assert len(rows) == 3


def test_verify_edgelist_file(tmp_path, capsys):
    target = tmp_path / "graph.txt"
    target.write_text("0 1\n1 2\n")
    code, out, _ = run(capsys, ["solve", str(target), "--format", "edgelist"])
    assert code == 0
    assert json.loads(out.strip())["matching_size"] == 1
