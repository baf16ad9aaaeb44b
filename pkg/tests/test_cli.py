import psutil
import pytest

from app.application import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, RlIndexApplication
from controllers.app_controller import peak_rss_bytes


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("RLINDEX_CONFIG", str(tmp_path / "missing.json"))
    for key in ("TAU", "TAU2", "RLCSA_TAU", "BLOCK_TAU", "MERGE_TAU", "SA_BACKEND", "VERIFY"):
        monkeypatch.delenv(f"RLINDEX_{key}", raising=False)
    return tmp_path


def _write(path, data: bytes) -> str:
    path.write_bytes(data)
    return str(path)


def run(*argv) -> int:
    return RlIndexApplication(list(argv)).run()


def test_stats_on_unary(workdir, capsys):
    source = _write(workdir / "a.txt", b"a" * 100)
    assert run("stats", source) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "n=101" in lines
    assert "r=2" in lines
    assert "z=2" in lines
    assert "m=1" in lines


def test_lz77_text_output(workdir, capsys):
    source = _write(workdir / "z.txt", b"zzzzzipzip")
    out = workdir / "z.lz"
    assert run("lz77", source, str(out)) == EXIT_OK
    assert out.read_text(encoding="utf-8").splitlines() == ["L z", "C 1 4", "L i", "L p", "C 5 3"]
    assert "z=5" in capsys.readouterr().out


def test_lyndon_output(workdir):
    source = _write(workdir / "b.txt", b"banana")
    out = workdir / "b.lyn"
    assert run("lyndon", source, str(out)) == EXIT_OK
    assert out.read_text(encoding="ascii") == "1 1 1\n2 2 2\n6 1 1\n"


def test_rlcsa_build_and_query(workdir, capsys):
    source = _write(workdir / "b.txt", b"banana")
    index = str(workdir / "b.rcsa")
    assert run("rlcsa", "build", source, index) == EXIT_OK
    capsys.readouterr()
    assert run("rlcsa", "query-segment", index, "3", "3") == EXIT_OK
    assert capsys.readouterr().out.strip() == "4 2 1"
    assert run("rlcsa", "query-sa", index, "4", "1") == EXIT_OK
    assert capsys.readouterr().out.split() == ["2", "7"]


def test_count_and_locate(workdir, capsys):
    source = _write(workdir / "b.txt", b"banana")
    assert run("count", source, "ana") == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"
    assert run("locate", source, "ana") == EXIT_OK
    assert capsys.readouterr().out.split() == ["2", "4"]
    assert run("count", source, "x") == EXIT_OK
    assert capsys.readouterr().out.strip() == "0"


def test_bwt_then_unbwt(workdir):
    source = _write(workdir / "b.txt", b"banana")
    rlbwt = workdir / "b.rlbwt"
    restored = workdir / "b.ints"
    assert run("bwt", source, str(rlbwt)) == EXIT_OK
    assert run("unbwt", str(rlbwt), str(restored)) == EXIT_OK
    assert restored.read_text(encoding="ascii") == "7 4\n2\n1\n3\n1\n3\n1\n0\n"


def test_ints_format_input(workdir, capsys):
    source = _write(workdir / "t.ints", b"6 3\n2\n1\n2\n1\n2\n0\n")
    assert run("--format", "ints", "count", source, "2 1") == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"


def test_plcp_summary(workdir, capsys):
    source = _write(workdir / "b.txt", b"banana")
    assert run("plcp", source, str(workdir / "b.plcp")) == EXIT_OK
    assert capsys.readouterr().out.strip() == "irreducible=5 sum=3"


def test_generated_fibonacci_is_repetitive(workdir, capsys):
    out = workdir / "fib.txt"
    assert run("gen", "fib", "--order", "12", "--out", str(out)) == EXIT_OK
    assert out.read_bytes().startswith(b"#rlindex-gen fib order=12\n")
    assert run("stats", str(out)) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "n=145" in lines
    r = next(int(line[2:]) for line in lines if line.startswith("r="))
    assert r <= 10


@pytest.mark.slow
def test_fibonacci_order_20_stats(workdir, capsys):
    out = workdir / "fib20.txt"
    assert run("gen", "fib", "--order", "20", "--out", str(out)) == EXIT_OK
    assert run("stats", str(out)) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "n=6766" in lines
    r = next(int(line[2:]) for line in lines if line.startswith("r="))
    assert r <= 10


def test_peak_memory_is_a_high_water_mark():
    block = b"x" * (64 << 20)
    del block
    peak = peak_rss_bytes()
    assert peak >= 64 << 20
    assert peak >= psutil.Process().memory_info().rss


def test_global_flags_in_any_position(workdir, capsys):
    source = _write(workdir / "m.txt", b"mississippi")
    assert run("--verify", "--tau", "2", "distinct", source) == EXIT_OK
    assert capsys.readouterr().out.strip() == "53"
    assert run("longest-k", source, "--k", "2", "--verify", "--dense-fallback") == EXIT_OK
    assert capsys.readouterr().out.strip() == "4"


def test_failures(workdir, capsys):
    assert run("stats", str(workdir / "nope.txt")) == EXIT_FAILURE
    assert "错误" in capsys.readouterr().err
    assert run() == EXIT_USAGE
    assert run("longest-k", "x.txt") == EXIT_USAGE
    source = _write(workdir / "b.txt", b"banana")
    assert run("longest-k", source, "--k", "1") == EXIT_FAILURE
