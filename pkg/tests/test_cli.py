import json
import shutil
import subprocess
import sys

from lmfkit.cli import main
from lmfkit.tei.profile import PROFILE_ENV

from conftest import CORPUS, FIXTURES

CENTER = str(FIXTURES / "center.xml")
DEAD = str(FIXTURES / "dead.xml")
ETYM = str(FIXTURES / "center-etym.xml")
PACKAGED = FIXTURES.parent.parent / "src" / "lmfkit" / "tei" / "lmf-tei.profile"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_clean(capsys):
    code, out, _ = run(capsys, "validate", *map(str, CORPUS))
    assert code == 0
    assert out == f"{len(CORPUS)} file(s): 0 error(s), 0 warning(s), 0 info\n"


def test_validate_reports_errors(capsys):
    code, out, _ = run(capsys, "validate", CENTER)
    assert code == 1
    assert "E-REF-DANGLING" in out and "center.xml:" in out


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "--format", "json", CENTER)
    doc = json.loads(out)
    assert code == 1
    assert [d["code"] for d in doc["diagnostics"]] == ["E-REF-DANGLING"]


def test_validate_missing_file(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", str(tmp_path / "nope.xml"))
    assert code == 2 and "E-IO" in out


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "validate")[0] == 2
    assert run(capsys, "lookup", "center")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_convert_needs_corpus_for_external_ids(capsys):
    code, _, err = run(capsys, "convert", CENTER)
    assert code == 1 and "dead_form" in err
    code, out, _ = run(capsys, "convert", CENTER, "--corpus", DEAD)
    assert code == 0 and out.startswith("<entry xmlns=") and 'corresp="#dead_form"' in out


def test_convert_is_idempotent(capsys, tmp_path):
    first, second = tmp_path / "one.xml", tmp_path / "two.xml"
    assert run(capsys, "convert", ETYM, "-o", str(first))[0] == 0
    assert run(capsys, "convert", str(first), "-o", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_convert_canonical(capsys, tmp_path):
    code, out, _ = run(capsys, "convert", "--canonical", CENTER)
    assert code == 0 and "<seg" in out
    assert run(capsys, "convert", "--canonical", "--to", "json", CENTER)[0] == 2
    bad = tmp_path / "bad.xml"
    bad.write_text("<entry><form>")
    assert run(capsys, "convert", "--canonical", str(bad))[0] == 1
    assert run(capsys, "convert", str(tmp_path / "absent.xml"))[0] == 2


def test_convert_to_json(capsys):
    code, out, _ = run(capsys, "convert", "--to", "json", ETYM)
    assert code == 0 and json.loads(out)["format"] == "lmfkit-json/1"


def test_lookup(capsys):
    code, out, _ = run(capsys, "lookup", "center", "--corpus", CENTER, DEAD)
    assert code == 0
    assert out.startswith("center\t-\tund\t2 sense(s)")
    code, out, err = run(capsys, "lookup", "nothing", "--corpus", CENTER, DEAD)
    assert code == 0 and out == "" and "no entry" in err


def test_etym(capsys):
    code, out, _ = run(capsys, "etym", "center", "--corpus", ETYM)
    assert code == 0 and out.count("←(") == 3
    assert run(capsys, "etym", "dead", "--corpus", DEAD)[0] == 1
    assert run(capsys, "etym", "nothing", "--corpus", DEAD)[0] == 1


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", "--format", "json", "--corpus", *map(str, CORPUS))
    assert code == 0 and json.loads(out)["mwes"] == 1
    code, out, _ = run(capsys, "stats", "--corpus", ETYM)
    assert code == 0 and "entries_by_kind: " in out


def test_export(capsys, tmp_path):
    target = tmp_path / "out.json"
    assert run(capsys, "export", "--corpus", *map(str, CORPUS), "-o", str(target))[0] == 0
    assert json.loads(target.read_bytes())["format"] == "lmfkit-json/1"
    code, out, err = run(capsys, "export", "--corpus", CENTER)
    assert code == 1 and out == "" and "E-REF-DANGLING" in err


def test_profile_option_and_environment(capsys, tmp_path, monkeypatch):
    strict = tmp_path / "strict.profile"
    text = PACKAGED.read_text("utf-8")
    assert "rend" not in text
    shutil.copyfile(PACKAGED, strict)
    assert run(capsys, "validate", "--profile", str(strict), ETYM)[0] == 0
    assert run(capsys, "validate", "--profile", str(tmp_path / "none.profile"), ETYM)[0] == 2
    broken = tmp_path / "broken.profile"
    broken.write_text("this is not a profile\n")
    monkeypatch.setenv(PROFILE_ENV, str(broken))
    assert run(capsys, "validate", ETYM)[0] == 2
    monkeypatch.setenv(PROFILE_ENV, str(strict))
    assert run(capsys, "validate", ETYM)[0] == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lmfkit.cli", "lookup", "center", "--corpus", ETYM],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("center\tcenter\ten")
