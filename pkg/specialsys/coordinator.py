"""Worker-pool coordinator for defectivity scans."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field
from functools import partial

from .classify import SecantReport, defective_reports, very_ample_classes
from .const import (
    DEFAULT_JOBS,
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    MODE_SYMBOLIC,
)
from .exceptions import ScanFailedError, SpecialSysError
from .lattice import DivisorClass

_LOGGER = logging.getLogger(__name__)


@dataclass
class ScanData:
    """Data returned by one scan."""

    reports: list[SecantReport] = field(default_factory=list)
    candidates: int = 0


def _report_key(report: SecantReport) -> tuple[int, tuple[int, ...], int]:
    return report.cls.degree, report.cls.mults, report.k


class ScanCoordinator:
    """Fan a scan out over very ample classes and merge the results in a fixed order."""

    def __init__(
        self,
        d_max: int,
        k_max: int,
        mode: str = MODE_SYMBOLIC,
        *,
        jobs: int = DEFAULT_JOBS,
        prime: int = DEFAULT_PRIME,
        trials: int = DEFAULT_TRIALS,
        seed: int = DEFAULT_SEED,
    ) -> None:
        """Initialize the coordinator."""
        self.d_max = d_max
        self.k_max = k_max
        self.mode = mode
        self.jobs = max(jobs, 1)
        self._worker = partial(
            defective_reports, k_max=k_max, mode=mode, prime=prime, trials=trials, seed=seed
        )

    def run(self) -> ScanData:
        """Scan every candidate class; the output order does not depend on ``jobs``."""
        candidates = list(very_ample_classes(self.d_max))
        _LOGGER.info(
            "Scanning %d very ample classes up to degree %d for k <= %d (%s, %d jobs)",
            len(candidates),
            self.d_max,
            self.k_max,
            self.mode,
            self.jobs,
        )
        data = ScanData(candidates=len(candidates))
        for found in self._scan_all(candidates):
            data.reports.extend(found)
        data.reports.sort(key=_report_key)
        _LOGGER.info("Scan found %d defective cases", len(data.reports))
        return data

    def _scan_all(self, candidates: list[DivisorClass]) -> list[list[SecantReport]]:
        if self.jobs == 1:
            return [self._worker(cls) for cls in candidates]
        try:
            with ProcessPoolExecutor(max_workers=self.jobs) as executor:
                return list(executor.map(self._worker, candidates, chunksize=16))
        except SpecialSysError:
            raise
        except (BrokenProcessPool, OSError) as err:
            raise ScanFailedError(f"Error running scan workers: {err}") from err
