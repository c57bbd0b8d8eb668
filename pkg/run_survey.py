import os
import time
import logging
import argparse

from sympy import primerange

from utils import load_settings, configure_logging
from model import emit_certificate, verify_theorem
from model.fields import is_admissible

logger = logging.getLogger()


def run(p, out_dir, closure_cap):
    logger.info(f"Verifier: survey p = {p}")
    start_time = time.time()
    cert = verify_theorem(p, closure_cap=closure_cap)
    emit_certificate(cert, os.path.join(out_dir, f"p{p}.json"))
    logger.info(f"Verifier: execution time {time.time() - start_time:.1f} seconds")
    return cert.verdict


def main(argv=None):
    parser = argparse.ArgumentParser(description="Verify every admissible prime in [lo, hi].")
    parser.add_argument("lo", type=int)
    parser.add_argument("hi", type=int)
    parser.add_argument("--out-dir", default="certificates")
    parser.add_argument("--config", default=None)
    args = parser.parse_args(argv)

    settings = load_settings(args.config)
    log_dir = os.path.join(settings.log_dir, "survey")
    os.makedirs(log_dir, exist_ok=True)
    file_handler = configure_logging(log_file=os.path.join(log_dir, "survey.log"))

    verdicts = {}
    for p in primerange(args.lo, args.hi + 1):
        p = int(p)
        if not is_admissible(p):
            continue
        try:
            print("#" * 20 + f" p = {p} " + "#" * 20)
            verdicts[p] = run(p, args.out_dir, settings.closure_cap)
        except Exception as e:
            logger.error(f"Verifier: [fail] p = {p}: {e}")
            verdicts[p] = "error"
        finally:
            file_handler.doRollover(p)

    failed = [p for p, v in verdicts.items() if v != "pass"]
    logger.info(f"Verifier: {len(verdicts)} primes, failures: {failed or 'none'}")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
