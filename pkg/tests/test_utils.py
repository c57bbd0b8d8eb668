import logging

import pytest
from colorama import Fore
from pydantic import ValidationError

from model.fields import FqElement
from utils import ColorPrint, PerPrimeFileHandler, Settings, configure_logging, load_settings, to_json_value
from utils.config import CONFIG_ENV


def test_defaults_when_file_is_missing(tmp_path):
    settings = load_settings(str(tmp_path / "absent.yaml"))
    assert settings == Settings()
    assert settings.closure_cap == 1_000_000
    assert settings.oracle.max_order == 120
    assert settings.oracle.directed_trials == 1000


def test_partial_file_keeps_other_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("arc_guard: 500\noracle:\n  seed: 4\n", encoding="utf-8")
    settings = load_settings(str(path))
    assert settings.arc_guard == 500
    assert settings.oracle.seed == 4
    assert settings.oracle.factorization_trials == 200


def test_unknown_keys_rejected(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("oracle:\n  max_order: 10\n  colour: red\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_settings(str(path))


def test_oracle_order_bounded(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("oracle:\n  max_order: 121\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_settings(str(path))


def test_path_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "env.yaml"
    path.write_text("primitivity_guard: 50\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    assert load_settings().primitivity_guard == 50


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    assert load_settings(str(path)) == Settings()


def test_to_json_value():
    value = {"a": FqElement(3, 4, 7), "pair": (1, FqElement(-1, 0, 7)), 5: [True, None]}
    assert to_json_value(value) == {"a": [3, 4], "pair": [1, [6, 0]], "5": [True, None]}


def test_color_print(capsys):
    printer = ColorPrint()
    printer.write("Verifier: [fail] group.h_order\n")
    printer.write("Verifier: [assumed] assumed.h_maximal\n")
    printer.write("Groups: closure done\n")
    printer.write("plain line\n")
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith(Fore.RED)
    assert lines[1].startswith(Fore.YELLOW)
    assert lines[2].startswith(Fore.MAGENTA)
    assert lines[3] == "plain line"


def test_per_prime_rollover(tmp_path):
    handler = PerPrimeFileHandler(str(tmp_path / "survey.log"), encoding="utf-8")
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger = logging.getLogger("rollover-test")
    logger.propagate = False
    logger.addHandler(handler)
    logger.setLevel(logging.INFO)
    try:
        logger.info("first prime")
        handler.doRollover(7)
        logger.info("second prime")
        handler.doRollover(13)
    finally:
        logger.removeHandler(handler)
        handler.close()
    assert (tmp_path / "survey_p7.log").read_text(encoding="utf-8") == "first prime\n"
    assert (tmp_path / "survey_p13.log").read_text(encoding="utf-8") == "second prime\n"


def test_configure_logging_levels(tmp_path):
    assert configure_logging(quiet=True) is None
    assert logging.getLogger().level == logging.WARNING
    handler = configure_logging(log_file=str(tmp_path / "run.log"))
    assert isinstance(handler, PerPrimeFileHandler)
    assert logging.getLogger().level == logging.INFO
    handler.close()
