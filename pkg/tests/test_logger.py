import logging

from src.logger import ENGINE_LOGGER, ScenarioFilter, get_engine_logger, scenario_context


def _record(msg):
    return logging.LogRecord("src.disks", logging.INFO, __file__, 1, msg, None, None)


def test_filter_stamps_active_scenario():
    record = _record("running")
    ScenarioFilter().filter(record)
    assert record.scenario == "-"
    with scenario_context("turning_point/flipped"):
        record = _record("running")
        ScenarioFilter().filter(record)
        assert record.scenario == "turning_point/flipped"
    ScenarioFilter().filter(record)
    assert record.scenario == "-"


def test_filter_shortens_long_complex_literals():
    record = _record("Final disk: center (0.123456789012+70.71067811865j), radius 2.5")
    ScenarioFilter().filter(record)
    assert record.msg == "Final disk: center 0.123457+70.7107j, radius 2.5"


def test_engine_logger_is_configured_once():
    logger = get_engine_logger(logging.DEBUG)
    assert logger.name == ENGINE_LOGGER == "src"
    handlers = len(logger.handlers)
    assert get_engine_logger(logging.WARNING) is logger
    assert len(logger.handlers) == handlers
    assert logger.level == logging.WARNING
    # module loggers propagate into it
    assert logging.getLogger("src.oracle.containment").parent.name.startswith("src")
