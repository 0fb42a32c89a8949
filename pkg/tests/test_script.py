from dualrt.script import run_script, strip_comment


def run(text):
    return run_script(text.strip() + "\n")


def test_strip_comment():
    assert strip_comment('send x # note') == "send x"
    assert strip_comment('send "a # b"') == 'send "a # b"'
    assert strip_comment("send fetch#1__ :a") == "send fetch#1__ :a"


def test_echo_and_results():
    report = run('send "A" * 3\nexpect "AAA"')
    assert report.lines[:4] == ['> send "A" * 3', '=> "AAA"', '> expect "AAA"', "=> ok"]
    assert report.exit_code == 0 and report.passed == 1


def test_failed_expect_exit_1():
    report = run('send 1 + 1\nexpect 3')
    assert report.exit_code == 1
    assert "--- expected\n+++ actual\n-3\n+2" in report.transcript


def test_unexpected_error_exit_2():
    report = run('send 1 nope')
    assert report.exit_code == 2 and report.unexpected_errors == 1
    assert report.lines[1].startswith("=> !NoMethodError: undefined method `nope'")


def test_expected_error_matches_base_class():
    report = run('env smalltalk\nsend "A" * 3\nexpect !NoMethodError')
    assert report.exit_code == 0


def test_parse_error_aborts():
    report = run('frobnicate\nsend 1 + 1')
    assert report.exit_code == 2
    assert "!! parse error at line 1" in report.transcript
    assert "send 1 + 1" not in report.transcript


def test_def_reports_bridge_count():
    report = run("class A super Object\ndef A f sig 4 body 1")
    assert report.lines[-2] == "=> 17  # f on ::A (+17)"


def test_class_in_smalltalk_is_smalltalk_named():
    report = run("env smalltalk\nclass P super Object\nenv ruby\nsend P new")
    assert report.exit_code == 0


def test_let_and_eval():
    report = run("send [1 2] size\nlet n\neval (+ n 1)\nexpect 3")
    assert report.exit_code == 0


def test_property_command_is_seeded():
    a = run_script("property bridges 5\n", seed=3).transcript
    b = run_script("property bridges 5\n", seed=3).transcript
    assert a == b
    assert "5/5 agree (seed 3)" in a


def test_dump_final_appends_hierarchy():
    report = run_script("class A super Object\n", dump_final=True)
    assert "# final hierarchy" in report.transcript
    assert "::A" in report.transcript.split("# final hierarchy")[1]


def test_modules_only_in_ruby():
    report = run("env smalltalk\nmodule M\nexpect !ModelViolation")
    assert report.exit_code == 0
