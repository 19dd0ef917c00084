"""Instance files, the verification suite and the command line."""

from .instance import Instance, InstanceError, build_instance, load_instance, parse_instance
from .suite import CHECKS, CheckResult, Report, run_suite


def golden(name: str) -> Instance:
    """A shipped instance by file stem (``i1_field``, ``i2_a2_apr``, ...)."""
    from importlib.resources import files
    return parse_instance((files("wakkit") / "instances" / f"{name}.json").read_text(), source=name)


__all__ = ["CHECKS", "CheckResult", "Instance", "InstanceError", "Report", "build_instance", "golden",
           "load_instance", "parse_instance", "run_suite"]
