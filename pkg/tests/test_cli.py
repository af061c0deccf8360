import io
import json
import subprocess
import sys

import pytest

from rpqkit.cli import main
from rpqkit.graph import Graph, PointedGraph
from rpqkit.oracle import oracle

EDGES = "s\ta\tx\nx\ta\tt\nt\ta\ts\ns\tb\tt\nx\tb\ts\n"


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text(EDGES)
    return str(path)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_classify_borders():
    code, text = run("classify", "a*b")
    assert code == 0
    assert "STE: yes" in text
    assert "cut borders: (0, 1)" in text


def test_classify_unsupported_and_strict():
    code, text = run("classify", "!(a+b)")
    assert code == 0 and "STE: no" in text
    assert run("classify", "(a b*)+c", "--strict")[0] == 1


def test_classify_json():
    code, text = run("classify", "abc*", "--json")
    report = json.loads(text)
    assert report["cut_borders"] == [2, 0]


def test_syntax_error_exits_two(capsys):
    assert run("classify", "a(b")[0] == 2
    assert "error" in capsys.readouterr().err


def test_enum_limit(graph_file):
    code, text = run("enum", graph_file, "s", "t", "--expr", "a*", "--semantics", "arbitrary", "--limit", "5")
    assert code == 0
    assert len(text.splitlines()) == 5


def test_enum_arbitrary_infinite_needs_limit(graph_file):
    assert run("enum", graph_file, "s", "t", "--expr", "a*", "--semantics", "arbitrary")[0] == 2


@pytest.mark.parametrize("semantics", ["simple", "trail", "shortest"])
@pytest.mark.parametrize("expr", ["a*", "a*b", "(a+b)*", "(aa)*"])
def test_enum_and_oracle_agree(graph_file, semantics, expr):
    _, enum_text = run("enum", graph_file, "s", "t", "--expr", expr, "--semantics", semantics)
    _, oracle_text = run("oracle", graph_file, "s", "t", "--expr", expr, "--semantics", semantics)
    assert sorted(enum_text.splitlines()) == sorted(oracle_text.splitlines())
    pg = PointedGraph(Graph.from_tsv(EDGES), "s", "t")
    assert len(enum_text.splitlines()) == len(oracle(pg, expr, semantics))


def test_eval_and_strict(graph_file):
    code, text = run("eval", graph_file, "s", "t", "--expr", "a*b", "--json")
    record = json.loads(text)
    assert code == 0 and record["answer"] and record["path"]["length"] >= 1
    assert run("eval", graph_file, "s", "t", "--expr", "c", "--strict")[0] == 1
    assert run("eval", graph_file, "s", "nowhere", "--expr", "a")[0] == 2


def test_color_method_honors_seed(graph_file, monkeypatch):
    args = ("eval", graph_file, "s", "t", "--expr", "aab*", "--method", "color")
    monkeypatch.setenv("RPQ_SEED", "11")
    first = run(*args)
    assert first == run(*args, "--seed", "3")
    monkeypatch.setenv("RPQ_SEED", "eleven")
    assert run(*args)[0] == 2


def test_gen_gadget(tmp_path):
    tri = tmp_path / "tri.tsv"
    tri.write_text("1\te\t2\n2\te\t3\n1\te\t3\n")
    target = tmp_path / "out.tsv"
    code, _ = run("gen-gadget", str(tri), "--kind", "two-color", "--k", "3", "-o", str(target))
    assert code == 0
    meta = json.loads((tmp_path / "out.tsv.meta.json").read_text())
    assert meta["nodes"] == 83 and meta["path_length"] == 24
    assert len(Graph.read_tsv(str(target)).edges) == 171
    assert run("gen-gadget", str(tri), "--kind", "mono", "--k", "9")[0] == 2


def test_bench_delay_json():
    code, text = run("bench-delay", "--layers", "3", "--runs", "2", "--limit", "5", "--json")
    records = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and len(records) == 2
    assert all(r["count"] == 5 for r in records)


def test_console_output_is_deterministic(graph_file):
    cmd = [sys.executable, "-m", "rpqkit", "enum", graph_file, "s", "t", "--expr", "(a+b)*", "--semantics", "trail"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_classify_query_file(tmp_path):
    queries = tmp_path / "q.txt"
    queries.write_text("# shapes\na*b\n\n(a b*)+c\n")
    code, text = run("classify", "--file", str(queries), "--json")
    records = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and [r["ste"] for r in records] == [True, False]
    assert run("classify", "--file", str(queries), "--strict")[0] == 1
    assert run("classify")[0] == 2
