#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Export of result rows as JSON, CSV or MessagePack, with rationals as "p/q" strings."""

import csv
from fractions import Fraction
import io
import json
import os
import pathlib
import tempfile
from typing import Any

import msgpack

from harmvol.common.exceptions import ConversionError
from harmvol.config.defaults import OUTPUT_FORMATS


def fraction_to_str(value: Fraction | int) -> str:
    """Exact rational as "p/q" in lowest terms with q ≥ 1; integers render as "p/1"."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def to_plain(data: Any) -> Any:
    """Replace every Fraction (and tuple) inside `data` by a serializable counterpart."""
    if isinstance(data, bool):
        return data
    if isinstance(data, Fraction):
        return fraction_to_str(data)
    if isinstance(data, dict):
        return {str(k): to_plain(v) for k, v in data.items()}
    if isinstance(data, list | tuple):
        return [to_plain(v) for v in data]
    return data


def dump_python_to_json_string(data: Any, pretty: bool = True) -> str:
    """Serializes a Python object to a JSON string."""
    try:
        return json.dumps(to_plain(data), indent=2 if pretty else None, sort_keys=True, ensure_ascii=False)
    except (TypeError, ValueError) as e:
        raise ConversionError(f"Failed to serialize data to JSON: {e}") from e


def dump_rows_to_csv_string(rows: list[dict[str, Any]]) -> str:
    """Serializes a list of flat rows to CSV; the header is the union of keys in first-seen order."""
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buffer = io.StringIO()
    try:
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            flat = to_plain(row)
            writer.writerow({k: json.dumps(v) if isinstance(v, list | dict) else v for k, v in flat.items()})
    except (csv.Error, TypeError, ValueError) as e:
        raise ConversionError(f"Failed to serialize rows to CSV: {e}") from e
    return buffer.getvalue()


def dump_python_to_msgpack_bytes(data: Any) -> bytes:
    """Serializes a Python object to MessagePack bytes."""
    try:
        packed: bytes = msgpack.packb(to_plain(data), use_bin_type=True)
        return packed
    except (TypeError, ValueError, OverflowError) as e:
        raise ConversionError(f"Failed to serialize data to MessagePack: {e}") from e


def load_msgpack_bytes(data: bytes) -> Any:
    try:
        return msgpack.unpackb(data, raw=False)
    except (msgpack.exceptions.ExtraData, msgpack.exceptions.UnpackValueError, ValueError) as e:
        raise ConversionError(f"Failed to decode MessagePack data: {e}") from e


def render(data: Any, fmt: str) -> str | bytes:
    """Render `data` (a dict with a "rows" list, or a list of rows) in one of OUTPUT_FORMATS."""
    if fmt not in OUTPUT_FORMATS:
        raise ConversionError(f"Unsupported output format '{fmt}'. Expected one of {OUTPUT_FORMATS}.")
    if fmt == "json":
        return dump_python_to_json_string(data) + "\n"
    if fmt == "msgpack":
        return dump_python_to_msgpack_bytes(data)
    rows = data.get("rows", []) if isinstance(data, dict) else data
    if not isinstance(rows, list):
        raise ConversionError("CSV export needs a list of rows.")
    return dump_rows_to_csv_string(rows)


def _replace_atomically(out: pathlib.Path, data: bytes) -> None:
    """Write `data` to a sibling temp file, then move it over `out`."""
    fd, tmp_name = tempfile.mkstemp(dir=out.parent, prefix=f".{out.name}.", suffix=".tmp")
    tmp = pathlib.Path(tmp_name)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, out)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def write_output(data: Any, fmt: str, out: pathlib.Path | None) -> str | bytes:
    """Render `data` and, when `out` is given, write it there atomically. Returns the rendered payload."""
    payload = render(data, fmt)
    if out is not None:
        try:
            out.parent.mkdir(parents=True, exist_ok=True)
            _replace_atomically(out, payload if isinstance(payload, bytes) else payload.encode("utf-8"))
        except OSError as e:
            raise ConversionError(f"Failed to write {fmt} output to {out}: {e}") from e
    return payload


# 🌀🧮🔚
