import io
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

from lieforms.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


GOOD_ALGEBRA = "[algebra]\ncompact = (0,0,0,12,14)\n"
BAD_ALGEBRA = "[algebra]\ncompact = (0,0,0,12,34)\n"
QUADRUPLET = """\
[structure]
eta = e1
omega1 = e24 + e53
omega2 = e25 + e34
omega3 = e23 + e45
"""


def test_validate_pass_and_fail(tmp_path):
    code, out = run_cli(["validate", write(tmp_path, "good.alg", GOOD_ALGEBRA)])
    assert code == 0 and "pass" in out
    code, out = run_cli(["validate", write(tmp_path, "bad.alg", BAD_ALGEBRA)])
    assert code == 1
    assert "d^2 e5 = -e123" in out


def test_parse_error_is_exit_two(tmp_path):
    code, out = run_cli(["validate", write(tmp_path, "broken.alg",
                                           "[algebra]\ndim = 3\nd e2 = e12 +\n")])
    assert code == 2 and "error" in out
    code, _ = run_cli(["validate", str(tmp_path / "missing.alg")])
    assert code == 2


def test_unknown_command_exits_two():
    code, _ = run_cli(["frobnicate"])
    assert code == 2


def test_check_balanced_quadruplet(tmp_path):
    path = write(tmp_path, "quad.alg", GOOD_ALGEBRA + QUADRUPLET)
    code, out = run_cli(["check", path, "--balanced"])
    assert code == 0
    assert "balanced residuals" in out
    code, out = run_cli(["check", path, "--hypo"])
    assert code == 1  # the quadruplet is balanced but not hypo
    assert "d(omega3)" in out


def test_cohomology_output(tmp_path):
    path = write(tmp_path, "solv.alg", """\
[algebra]
dim = 5
d e3 = e13
d e4 = -e14
d e5 = e34
""")
    code, out = run_cli(["cohomology", path, "--max-degree", "2"])
    assert code == 0
    assert "b1 = 2" in out and "[e1]" in out and "[e12]" in out


FAMILY = """\
[algebra]
dim = 5
d e4 = -e23

[family]
param = t
eta = e5
omega1 = e12 + e3^(e4 - t*e5)
omega2 = e13 + (e4 - t*e5)^e2
omega3 = e1^(e4 - t*e5) + e23
"""


def test_evolve_verify_and_suspend(tmp_path):
    path = write(tmp_path, "family.alg", FAMILY)
    code, out = run_cli(["evolve-verify", path])
    assert code == 0
    assert "evolution equations: pass" in out
    out_path = tmp_path / "suspended.alg"
    code, out = run_cli(["suspend", path, "-o", str(out_path)])
    assert code == 0
    text = out_path.read_text()
    assert "psi_plus" in text
    # the emitted file parses back through the same grammar
    from lieforms.algebras import parse_equations
    sf = parse_equations(text)
    assert sf.algebra.dimension == 6
    assert not sf.forms["F"].is_zero()


IWASAWA_STRUCTURE = """\
[algebra]
compact = (0,0,0,0,13+42,14+23)

[structure]
F = e12 + e34 + e56
psi_plus = e135 - e146 - e236 - e245
psi_minus = e136 + e145 + e235 - e246
J: e1 -> -e2, e2 -> e1, e3 -> -e4, e4 -> e3, e5 -> -e6, e6 -> e5
"""


def test_bismut_and_holonomy(tmp_path):
    path = write(tmp_path, "iwasawa.alg", IWASAWA_STRUCTURE)
    code, out = run_cli(["bismut", path, "--show", "connection", "--show", "torsion"])
    assert code == 0
    assert "omega^1_5 = -e3" in out
    assert "T = -e135 - e146 - e236 + e245" in out
    code, out = run_cli(["bismut", path, "--show", "curvature"])
    assert "Omega^1_2 = 2*e34" in out
    code, out = run_cli(["holonomy", path])
    assert code == 0
    assert "dim=8" in out and "su(n)=yes" in out
    code, out = run_cli(["check", path, "--su3", "--balanced"])
    assert code == 0


def test_catalog_list_has_all_entries():
    code, out = run_cli(["catalog", "list"])
    assert code == 0
    lines = [l for l in out.strip().splitlines()]
    assert len(lines) >= 16
    assert any(l.startswith("thm4.1-I ") for l in lines)
    assert any(l.startswith("ex4.6") for l in lines)


def test_catalog_run_single():
    code, out = run_cli(["catalog", "run", "thm4.1-I"])
    assert code == 0
    assert out.startswith("PASS  thm4.1-I")
    assert "holonomy dimension = 8" in out
    code, out = run_cli(["catalog", "run", "no-such-entry"])
    assert code == 2


def test_catalog_run_all_deterministic_and_jobs_invariant():
    code1, out1 = run_cli(["catalog", "run-all"])
    code2, out2 = run_cli(["catalog", "run-all"])
    code3, out3 = run_cli(["catalog", "run-all", "--jobs", "4"])
    assert code1 == code2 == code3 == 0
    assert out1 == out2 == out3
    assert f"22/22 entries passed" in out1


def test_report_includes_source_annotations():
    code, out = run_cli(["report", "family-nil5-12-13-23"])
    assert code == 0
    assert "source states volume" in out
    assert "structure file:" in out


def test_golden_run_all_summary():
    golden = FIXTURES / "catalog_run_all.txt"
    _, out = run_cli(["catalog", "run-all"])
    assert out == golden.read_text(encoding="utf-8")


def test_golden_entry_report():
    golden = FIXTURES / "report_thm4_1_I.txt"
    _, out = run_cli(["catalog", "run", "thm4.1-I"])
    assert out == golden.read_text(encoding="utf-8")


def test_bismut_show_nabla(tmp_path):
    path = write(tmp_path, "iwasawa.alg", IWASAWA_STRUCTURE)
    code, out = run_cli(["bismut", path, "--show", "nabla"])
    assert code == 0
    assert "nabla_E1 Omega^1_2 = -2*e36 + 2*e45" in out


def test_cohomology_rejects_parametric_algebra(tmp_path):
    path = write(tmp_path, "param.alg", """\
[algebra]
dim = 3
d e3 = t*e12
""")
    code, out = run_cli(["cohomology", path])
    assert code == 2 and "error" in out


def test_suspend_without_family_is_input_error(tmp_path):
    path = write(tmp_path, "nofam.alg", GOOD_ALGEBRA)
    code, out = run_cli(["suspend", path])
    assert code == 2
    code, out = run_cli(["evolve-verify", path])
    assert code == 2


def test_check_without_structure_is_input_error(tmp_path):
    path = write(tmp_path, "bare.alg", GOOD_ALGEBRA)
    code, out = run_cli(["check", path])
    assert code == 2 and "no checkable structure" in out


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "lieforms.cli", "catalog", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "thm4.2-h2" in proc.stdout
