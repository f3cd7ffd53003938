"""
Package that contains the command line interface: configuration parsing,
report and energy log formats, and field snapshots.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .config import SimulationSpec
from .config import parse_config
from .config import load_config
from .snapshot import write_snapshot
from .snapshot import read_snapshot
from .reportio import format_report
from .reportio import parse_report
from .reportio import write_energy_log
from .reportio import read_energy_log
from .main import cmd_check
from .main import cmd_simulate
from .main import cmd_reduce
from .main import main
