#!/usr/bin/env python3
"""Serve a fixture corpus over HTTP with the provider wire contract.

Useful for exercising the HTTP provider locally:

    python3 scripts/run_stub_provider.py --root fixtures --port 8750
    sei draft --doi 10.1000/demo-rct --provider http \
        --base-url http://127.0.0.1:8750 --registry src/sei/data/demo_registry.csv
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--root", default="fixtures", help="fixture corpus directory")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8750)
    args = parser.parse_args()

    from sei.stubserver import make_stub_server

    server = make_stub_server(args.root, args.host, args.port)
    print(f"stub provider for {args.root} on http://{args.host}:{server.server_port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


if __name__ == "__main__":
    sys.exit(main())
