import json

import pytest

from hurwitzkit.core.exceptions import CommandException
from hurwitzkit.core.models import CommandResult, CrossCheck, VerificationReport
from hurwitzkit.handlers.command_factory import CommandFactory
from hurwitzkit.utils.config import deep_merge, load_config, schema_defaults
from hurwitzkit.utils.response_manager import ResponseManager
from hurwitzkit.utils.template_renderer import Jinja2TemplateRenderer


def test_schema_defaults(config):
    assert config["oracle"]["enumeration_limit"] == 7
    assert config["series"]["default_order"] == 12
    assert config["output"]["format"] == "json"
    assert config["ui_preferences"]["custom_templates"]["enable_custom"] is False
    assert schema_defaults({"a": {"type": "object", "items": {"b": {"type": "int", "default": 3}}}}) == {"a": {"b": 3}}


def test_deep_merge_keeps_unrelated_keys():
    merged = deep_merge({"a": {"b": 1, "c": 2}, "d": 4}, {"a": {"b": 5}})
    assert merged == {"a": {"b": 5, "c": 2}, "d": 4}


def test_load_config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"oracle": {"enumeration_limit": 5}}), encoding="utf-8")
    config = load_config(str(path))
    assert config["oracle"] == {"enumeration_limit": 5, "force": False}
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(CommandException):
        load_config(str(path))
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(CommandException):
        load_config(str(path))


def test_get_response(config):
    manager = ResponseManager(config)
    assert manager.oracle_skipped(8, 7) == "oracle cross-check skipped: n=8 exceeds enumeration limit 7"
    assert manager.selftest_summary(3, 4) == "selftest: 3/4 passed"
    assert manager.verification_passed("qcurve", 10) is None


def test_get_response_keeps_bad_placeholders():
    manager = ResponseManager({"ui_preferences": {"custom_responses": {"selftest_summary": "{missing}"}}})
    assert manager.selftest_summary(1, 1) == "{missing}"


def test_json_is_sorted(config):
    manager = ResponseManager(config)
    result = CommandResult({"command": "x", "b": 1, "a": 2}, "1/2", [CrossCheck("oracle", True, "1/2")])
    text = manager.to_json(result)
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text)["result"] == "1/2"


def test_failed_result_carries_first_failure(config):
    report = VerificationReport(subject="qcurve", params={}, order=4)
    report.fail({"exponent": 3})
    report.fail({"exponent": 4})
    result = CommandResult({"command": "qcurve"}, report.to_json(), reports=[report])
    assert result.first_failure == {"subject": "qcurve", "exponent": 3}
    assert json.loads(ResponseManager(config).to_json(result))["first_failure"]["exponent"] == 3
    assert ResponseManager(config).status_message(result) == "verification failed: qcurve"


def test_csv_needs_columns(config):
    manager = ResponseManager(config)
    with pytest.raises(CommandException):
        manager.to_csv(CommandResult({"command": "x"}, "1"))
    table = CommandResult({"command": "t"}, [{"mu": [2, 1], "value": "1/3"}], columns=["mu", "value"])
    assert manager.to_csv(table) == 'mu,value\n"2,1",1/3\n'
    with pytest.raises(CommandException):
        manager.render(table, "yaml")


def test_text_rendering(config):
    manager = ResponseManager(config)
    text = manager.render(CommandResult({"command": "elsv-k", "L": 2}, "-3", [CrossCheck("reexponentiate", False)]),
                          "text")
    assert text.startswith("elsv-k L=2")
    assert "= -3" in text
    assert "[MISMATCH] reexponentiate" in text


def test_custom_template():
    config = {"ui_preferences": {"custom_templates": {"enable_custom": True, "value_template": "{{ result }}!"}}}
    renderer = Jinja2TemplateRenderer(config)
    assert renderer.render("value", {"result": "7", "query": {}, "crosschecks": []}) == "7!"


def test_command_factory(app):
    factory = app.command_factory
    assert factory.list_commands() == ["hurwitz", "oracle", "jucys", "qcurve", "constraints", "elsv-k",
                                       "quasipoly", "selftest"]
    assert factory.get_handler("QCURVE") is factory.get_handler("qcurve")
    handler = factory.get_handler("jucys")
    factory.unregister_handler("jucys")
    assert factory.get_handler("jucys") is None
    factory.register_handler("Jucys", handler)
    assert factory.get_handler("jucys") is handler
