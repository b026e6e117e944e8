"""End-to-end runs of the command-line front end."""
import json

from confsalg.cli import main, thread_cap
from confsalg import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_lists_names(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert out.split() == list(catalog.NAMES)


def test_build_round_trip(tmp_path, capsys):
    path = tmp_path / "s2.json"
    code, out, _ = run(capsys, "build", "S2", "-o", str(path))
    assert code == 0 and out == ""
    assert path.read_text() == catalog.build("S2").to_json()
    code, out, _ = run(capsys, "build", "K1")
    assert code == 0
    assert out == catalog.build("K1").to_json()


def test_build_errors(capsys):
    assert run(capsys, "build", "K5")[0] == 2
    assert run(capsys, "build", "S2", "--alpha", "2")[0] == 2
    assert run(capsys, "build", "N4alpha", "--alpha", "1+")[0] == 2


def test_verify_ok_and_failing(tmp_path, capsys):
    good = tmp_path / "k2.json"
    run(capsys, "build", "K2", "-o", str(good))
    code, out, _ = run(capsys, "verify", str(good), "--axioms", "P,H,C",
                       "--mmax", "3", "--nmax", "3", "--dmax", "2")
    assert code == 0
    assert "P:" in out and "H:" in out and "C:" in out

    R = catalog.build("K2")
    label, M = next(iter(R.sign_mutations()))
    bad = tmp_path / "bad.json"
    bad.write_text(M.to_json())
    code, out, _ = run(capsys, "verify", str(bad), "--axioms", "P,H",
                       "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert not all(doc[a]["ok"] for a in doc)


def test_verify_input_errors(tmp_path, capsys):
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(capsys, "verify", str(junk))[0] == 2
    good = tmp_path / "vir.json"
    run(capsys, "build", "Vir", "-o", str(good))
    assert run(capsys, "verify", str(good), "--axioms", "Q")[0] == 2


def test_invariants_output(tmp_path, capsys):
    path = tmp_path / "n4a0.json"
    run(capsys, "build", "N4alpha", "--alpha", "0", "-o", str(path))
    code, out, _ = run(capsys, "invariants", str(path), "--format", "json")
    assert code == 0
    sig = json.loads(out)
    assert sig["dims"] == {"2": 1, "3/2": 4, "1": 7, "1/2": 4}
    assert sig["simple"] is True
    assert sig["charpoly"].startswith("t^6")
    code, out, _ = run(capsys, "invariants", str(path))
    assert "dims: " in out and "simple: true" in out


def test_simplicity_degenerate_member(tmp_path, capsys):
    path = tmp_path / "n4a1.json"
    run(capsys, "build", "N4alpha", "--alpha", "1", "-o", str(path))
    code, out, _ = run(capsys, "simplicity", str(path))
    assert code == 1
    assert "not simple; witness ideal generator in F³:" in out

    path2 = tmp_path / "n4a.json"
    run(capsys, "build", "N4alpha", "-o", str(path2))
    code, out, _ = run(capsys, "simplicity", str(path2), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["simple"] is True
    assert doc["nondegeneracy_condition"] in ("1-a^2", "-1+a^2", "a^2-1")


def test_isocheck(tmp_path, capsys):
    pa = tmp_path / "p.json"
    pb = tmp_path / "m.json"
    run(capsys, "build", "N4alpha", "--alpha", "2", "-o", str(pa))
    run(capsys, "build", "N4alpha", "--alpha", "-2", "-o", str(pb))
    f = catalog.swap_map(catalog.build("N4alpha", 2),
                         catalog.build("N4alpha", -2))
    mp = tmp_path / "map.json"
    mp.write_text(json.dumps({src: {dst: str(c) for dst, c in img.items()}
                              for src, img in f.items()}))
    code, out, _ = run(capsys, "isocheck", str(pa), str(pb),
                       "--map", str(mp))
    assert code == 0 and "isomorphism verified" in out

    bad = tmp_path / "badmap.json"
    bad.write_text(json.dumps({"L": {"L": "1"}}))
    code, out, _ = run(capsys, "isocheck", str(pa), str(pb),
                       "--map", str(bad))
    assert code == 1 and "not an isomorphism" in out
    assert run(capsys, "isocheck", str(pa), str(pb),
               "--map", str(tmp_path / "none.json"))[0] == 2


def test_exclude_text(capsys):
    code, out, _ = run(capsys, "exclude", "--dimv", "5")
    assert code == 0
    assert "UNSAT: a12 forced to both 2 and -2" in out
    code, out, _ = run(capsys, "exclude", "--dimv", "6")
    assert code == 0
    assert "5 solution(s)" in out
    assert "simple algebra of dimension 32" in out
    assert run(capsys, "exclude", "--dimv", "4")[0] == 2


def test_exclude_json(capsys):
    code, out, _ = run(capsys, "exclude", "--dimv", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["satisfiable"] is True
    assert len(doc["solutions"]) == 9


def test_thread_cap(monkeypatch):
    monkeypatch.delenv("CONFSALG_THREADS", raising=False)
    assert thread_cap() == 1
    monkeypatch.setenv("CONFSALG_THREADS", "4")
    assert thread_cap() == 4
    monkeypatch.setenv("CONFSALG_THREADS", "zero")
    assert thread_cap() == 1
