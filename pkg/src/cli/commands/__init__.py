from .report import cmd_report
from .run import cmd_run
from .verify import cmd_verify

__all__ = ["cmd_report", "cmd_run", "cmd_verify"]
