import os
import logging
from logging.handlers import BaseRotatingHandler
from colorama import Fore


class ColorPrint:
    def __init__(self):
        self.color_mapping = {
            "Fields": Fore.CYAN,
            "Matrices": Fore.BLUE,
            "Groups": Fore.MAGENTA,
            "Digraph": Fore.GREEN,
            "Verifier": Fore.LIGHTGREEN_EX,
            "Oracle": Fore.LIGHTBLACK_EX,
        }

    def write(self, data):
        if "[fail]" in data:
            print(Fore.RED + data + Fore.RESET, end="")
            return
        if "[assumed]" in data:
            print(Fore.YELLOW + data + Fore.RESET, end="")
            return
        module = data.split(":")[0]
        if module not in self.color_mapping:
            print(data, end="")
        else:
            print(self.color_mapping[module] + data + Fore.RESET, end="")

    def flush(self):
        pass


class PerPrimeFileHandler(BaseRotatingHandler):
    """Writes to <dir>/<stem>.log; doRollover(p) moves it to <stem>_p<p>.log."""

    def __init__(self, filename, mode="a", encoding=None, delay=False):
        BaseRotatingHandler.__init__(self, filename, mode, encoding, delay)

    def doRollover(self, p=None):
        if self.stream:
            self.stream.close()
            self.stream = None

        stem, ext = os.path.splitext(self.baseFilename)
        dfn = self.rotation_filename(f"{stem}_p{p}{ext}")
        if os.path.exists(dfn):
            os.remove(dfn)
        if os.path.exists(self.baseFilename):
            self.rotate(self.baseFilename, dfn)

        if not self.delay:
            self.stream = self._open()

    def shouldRollover(self, record):
        if self.stream is None:
            self.stream = self._open()
        return 0


def configure_logging(quiet=False, log_file=None):
    handlers = [logging.StreamHandler(ColorPrint())]
    file_handler = None
    if log_file is not None:
        os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)
        file_handler = PerPrimeFileHandler(log_file, encoding="utf-8")
        handlers.append(file_handler)
    logging.basicConfig(format="%(message)s", handlers=handlers, force=True)
    logging.getLogger().setLevel(logging.WARNING if quiet else logging.INFO)
    return file_handler


def to_json_value(value):
    """Walk a value and serialize field elements, matrices and group elements."""
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    return value
