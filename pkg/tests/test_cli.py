import subprocess
import sys

from dualrt import cli
from dualrt.kernel import BOOTSTRAP_CLASSES, BOOTSTRAP_OBJECTS


def test_bootstrap_stats():
    text = cli.bootstrap_stats()
    assert f"objects={BOOTSTRAP_OBJECTS}" in text
    assert f"classes={BOOTSTRAP_CLASSES}" in text


def test_main_runs_script(tmp_path, capsys):
    path = tmp_path / "s.dr"
    path.write_text('send "A" * 3\nexpect "AAA"\n')
    assert cli.main(["--script", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.endswith("# expects passed=1 failed=0 unexpected_errors=0 exit=0\n")


def test_exit_codes_through_module(tmp_path):
    path = tmp_path / "bad.dr"
    path.write_text("send 1 + 1\nexpect 5\n")
    proc = subprocess.run([sys.executable, "-m", "dualrt", "--script", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    proc = subprocess.run([sys.executable, "-m", "dualrt"], input="nonsense\n",
                          capture_output=True, text=True)
    assert proc.returncode == 2
