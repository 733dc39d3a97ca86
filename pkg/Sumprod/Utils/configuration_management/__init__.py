from Sumprod.Utils.configuration_management.configuration_management import get_config_manager
from Sumprod.Utils.configuration_management.knob_manager import get_knob_manager, knob_value
from Sumprod.Utils.configuration_management.enums import (SignSummary, BinaryOp, EnergyKind, FamilyKind,
                                                           ReportFormat, LogBase, SWEEP_MEASUREMENTS)
