import contextlib
import contextvars
import logging
import re

ENGINE_LOGGER = __name__.rpartition(".")[0] or "src"

_scenario = contextvars.ContextVar("scenario", default="-")

_COMPLEX = re.compile(r"\(?(-?\d+\.\d{7,}(?:e[-+]?\d+)?)([-+]\d+\.\d{7,}(?:e[-+]?\d+)?)j\)?")


@contextlib.contextmanager
def scenario_context(name: str):
    token = _scenario.set(name)
    try:
        yield
    finally:
        _scenario.reset(token)


def _short_complex(match: re.Match) -> str:
    re_part, im_part = float(match.group(1)), float(match.group(2))
    return f"{complex(re_part, im_part):.6g}"


class ScenarioFilter(logging.Filter):
    """Stamps records with the active scenario and shortens long complex literals"""
    def filter(self, record):
        record.scenario = _scenario.get()
        if isinstance(record.msg, str):
            record.msg = _COMPLEX.sub(_short_complex, record.msg)
        return True


def get_engine_logger(level: int = logging.INFO):
    logger = logging.getLogger(ENGINE_LOGGER)
    if not any(getattr(h, "_engine_handler", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler._engine_handler = True
        handler.addFilter(ScenarioFilter())
        formatter = logging.Formatter('%(asctime)s - %(levelname)s - [%(scenario)s] %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    logger.setLevel(level)
    return logger
