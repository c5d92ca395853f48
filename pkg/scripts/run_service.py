#!/usr/bin/env python3
"""Launch the assessment service from a config file.

Equivalent to ``sei serve --config <file>``; kept as a script so the service
can be run straight from a checkout:

    python3 scripts/run_service.py --config config.example.json
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", help="JSON config file (SEI_* env vars override)")
    args = parser.parse_args()

    import uvicorn

    from sei.service import create_app, load_config

    config = load_config(args.config)
    app = create_app(config)
    print(f"serving on http://{config.host}:{config.port}")
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
