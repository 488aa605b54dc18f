# vim: expandtab:ts=4:sw=4
"""Run configuration: command-line flags over environment over ini file."""
import configparser
import logging
import os

from qmknot.skein_oracle import DEFAULT_RECURSION_LIMIT, STRATEGIES
from qmknot.thimble import FlowSettings

log = logging.getLogger(__name__)

ENV_RECURSION_LIMIT = "QS_RECURSION_LIMIT"

DEFAULTS = {
    "oracle": {
        "recursion_limit": str(DEFAULT_RECURSION_LIMIT),
        "strategy": "first",
    },
    "thimble": {name: repr(value)
                for name, value in FlowSettings()._asdict().items()},
    "tabulate": {
        "processes": "1",
    },
    "logging": {
        "level": "WARNING",
    },
}


def read_ini(path=None):
    """Defaults overlaid with the ini file at ``path``, if given."""
    config = configparser.ConfigParser()
    config.optionxform = str
    config.read_dict(DEFAULTS)
    if path is not None:
        if not config.read(path):
            raise FileNotFoundError(f"config file {path} not found")
        log.debug("read configuration from %s", path)
    return config


def parse_ranks(text):
    """``"3"`` or an inclusive range ``"1..3"``."""
    first, sep, last = text.partition("..")
    try:
        lo = int(first)
        hi = int(last) if sep else lo
    except ValueError:
        raise ValueError(f"rank range {text!r} is not N or N..M")
    if hi < lo:
        raise ValueError(f"empty rank range {text!r}")
    return list(range(lo, hi + 1))


class RunConfig(object):
    """Settings shared by every sub-command.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed command line.
    environ : Optional[Mapping[str, str]]
        Environment; defaults to ``os.environ``.

    Attributes
    ----------
    command : str
    fmt : str
        ``text``, ``json`` or ``jsonl``.
    out : Optional[str]
    log_level : str
    quiet : bool
    recursion_limit : int
    strategy : str
    flow : FlowSettings
    processes : int

    """

    def __init__(self, args, environ=None):
        environ = os.environ if environ is None else environ
        ini = read_ini(getattr(args, "config", None))
        self.command = args.command
        self.fmt = args.format
        self.out = args.out
        self.quiet = args.quiet
        self.log_level = (args.log_level or ini["logging"]["level"]).upper()

        limit = getattr(args, "recursion_limit", None)
        if limit is None and environ.get(ENV_RECURSION_LIMIT):
            limit = environ[ENV_RECURSION_LIMIT]
        if limit is None:
            limit = ini["oracle"]["recursion_limit"]
        self.recursion_limit = int(limit)

        self.strategy = getattr(args, "strategy", None) or ini["oracle"]["strategy"]
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown oracle strategy {self.strategy!r}")

        section = ini["thimble"]
        flow = {name: section.getfloat(name) for name in FlowSettings._fields}
        if getattr(args, "dt", None) is not None:
            flow["dt"] = args.dt
        self.flow = FlowSettings(**flow)

        processes = getattr(args, "processes", None)
        self.processes = int(processes if processes is not None
                             else ini["tabulate"]["processes"])
