from .utils import ColorPrint, PerPrimeFileHandler, configure_logging, to_json_value
from .config import Settings, OracleSettings, load_settings
