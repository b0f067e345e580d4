import logging
import os
import struct
import tempfile
from pathlib import Path
from typing import Union

import numpy as np
import numpy.typing as npt
import pandas as pd
from pydantic import BaseModel

from ..error.invalid_input_error import InvalidInputError
from ..error.seed_format_error import SeedFormatError
from ..model.piecewise_path import PiecewisePath
from ..model.seed_set import SeedSet

logger = logging.getLogger(__name__)

MAGIC = b"NAOS"
VERSION = 1
HEADER = struct.Struct("<4sBBII")
DTYPE_CODES = {"f64": 0, "f32": 1}
DTYPE_TAGS = {code: tag for tag, code in DTYPE_CODES.items()}
NUMPY_DTYPES = {"f64": np.dtype("<f8"), "f32": np.dtype("<f4")}
# Wider paths are written in the binary seed format instead of CSV.
MAX_CSV_DIM = 64

PathLike = Union[str, os.PathLike]


class SeedFileManager:
    def __init__(self, float_format: str = "%.17g"):
        """
        Reads and writes seed sets, paths, grids and JSON reports.

        Every write goes to a temporary file in the target directory and is renamed into
        place, so readers never see a partial file.

        :param float_format: printf format for CSV values (the default round-trips float64)
        """
        self.float_format = float_format

    def _write_atomic(self, path: PathLike, payload: Union[bytes, str]) -> None:
        target = Path(path)
        mode = "wb" if isinstance(payload, bytes) else "w"
        fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
        try:
            with os.fdopen(fd, mode) as handle:
                handle.write(payload)
            os.replace(tmp_name, target)
        except Exception:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        logger.debug(f"Wrote {target}")

    def encode_seedset(self, seedset: SeedSet) -> bytes:
        data = np.ascontiguousarray(seedset.seeds, dtype=NUMPY_DTYPES[seedset.dtype])
        header = HEADER.pack(MAGIC, VERSION, DTYPE_CODES[seedset.dtype], seedset.d, seedset.count)
        return header + data.tobytes(order="C")

    def decode_seedset(self, payload: bytes) -> SeedSet:
        """
        Parse the binary seed format.

        Raises:
            SeedFormatError: With the byte offset of the first offending field
        """
        if len(payload) < HEADER.size:
            raise SeedFormatError(f"Header needs {HEADER.size} bytes, file has {len(payload)}", len(payload))

        magic, version, dtype_code, d, count = HEADER.unpack_from(payload, 0)
        if magic != MAGIC:
            raise SeedFormatError(f"Bad magic {magic!r}, expected {MAGIC!r}", 0)
        if version != VERSION:
            raise SeedFormatError(f"Unsupported version {version}", 4)
        if dtype_code not in DTYPE_TAGS:
            raise SeedFormatError(f"Unknown dtype code {dtype_code}", 5)
        if d == 0:
            raise SeedFormatError("Dimension must be positive", 6)
        if count == 0:
            raise SeedFormatError("Seed count must be positive", 10)

        tag = DTYPE_TAGS[dtype_code]
        dtype = NUMPY_DTYPES[tag]
        expected = HEADER.size + d * count * dtype.itemsize
        if len(payload) < expected:
            raise SeedFormatError(f"Truncated data: expected {expected} bytes, got {len(payload)}", len(payload))
        if len(payload) > expected:
            raise SeedFormatError(f"{len(payload) - expected} trailing bytes after the seed data", expected)

        values = np.frombuffer(payload, dtype=dtype, count=d * count, offset=HEADER.size)
        return SeedSet(seeds=values.astype(np.float64).reshape(count, d), dtype=tag)

    def write_seedset(self, path: PathLike, seedset: SeedSet) -> None:
        self._write_atomic(path, self.encode_seedset(seedset))
        logger.info(f"Wrote {seedset.count} seeds of dimension {seedset.d} ({seedset.dtype}) to {path}")

    def read_seedset(self, path: PathLike) -> SeedSet:
        try:
            payload = Path(path).read_bytes()
        except OSError as e:
            raise InvalidInputError(f"Cannot read seed file {path}: {e}") from e
        seedset = self.decode_seedset(payload)
        logger.info(f"Read {seedset.count} seeds of dimension {seedset.d} from {path}")
        return seedset

    def write_report(self, path: PathLike, report: BaseModel) -> None:
        self._write_atomic(path, report.model_dump_json(indent=2) + "\n")

    def write_path(self, path: PathLike, piecewise_path: PiecewisePath) -> None:
        """
        Dump path points: CSV (header index,c0,...) for *.csv targets with d <= 64,
        the binary seed format otherwise.
        """
        if str(path).endswith(".csv"):
            if piecewise_path.d > MAX_CSV_DIM:
                raise InvalidInputError(f"CSV path dumps are limited to d <= {MAX_CSV_DIM}, got d = {piecewise_path.d}")
            frame = pd.DataFrame(piecewise_path.points, columns=[f"c{i}" for i in range(piecewise_path.d)])
            frame.index.name = "index"
            self._write_atomic(path, frame.to_csv(float_format=self.float_format))
        else:
            self.write_seedset(path, SeedSet(seeds=piecewise_path.points))

    def write_grid_csv(self, path: PathLike, grid: npt.NDArray[np.float64]) -> None:
        """R x R values, no header, no index"""
        frame = pd.DataFrame(grid)
        self._write_atomic(path, frame.to_csv(header=False, index=False, float_format=self.float_format))

    def write_table(self, path: PathLike, frame: pd.DataFrame) -> None:
        self._write_atomic(path, frame.to_csv(index=False, float_format=self.float_format))
