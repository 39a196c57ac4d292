#!/usr/bin/env python
import os
import sys

from dotenv import load_dotenv

# Load .env from project root before settings are read
load_dotenv(dotenv_path=os.path.join(os.path.dirname(__file__), "..", ".env"))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.cli import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
