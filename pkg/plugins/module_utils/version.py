from __future__ import annotations

version = "1.0.0"  # x-release-please-version
