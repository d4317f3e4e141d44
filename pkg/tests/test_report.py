from __future__ import annotations

import numpy as np

from sonopt.engine import render_run
from sonopt.events import RunEventLog
from sonopt.front import RawFront
from sonopt.params import EngineParams
from sonopt.report import write_report


def test_report_writes_figures_and_csv(tmp_path):
    params = EngineParams(sample_rate_hz=48000.0, seconds_per_generation=0.1)
    log = RunEventLog(problem="zdt1", algorithm="nsga2", params=params)
    rng = np.random.default_rng(5)
    for gen in range(2):
        f1 = np.sort(rng.random(20))
        pts = np.column_stack([f1, (1 - f1) ** 2])
        log.add_front(RawFront(gen, pts))
    result = render_run(log)
    written = write_report(result, log, tmp_path / "report")

    names = {p.name for p in written}
    assert "approximation_front.png" in names
    assert "path1_sonogram.png" in names
    assert "path1_sonogram.csv" in names
    assert "final_buffer.png" in names
    assert "partial_amplitudes.png" in names
    for path in written:
        assert path.stat().st_size > 0

    csv_rows = (tmp_path / "report" / "path1_sonogram.csv").read_text().strip().splitlines()
    assert len(csv_rows) == (result.path1.shape[0] - 4096) // 1024 + 1
