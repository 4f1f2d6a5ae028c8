# 'src/views/RunPageAdd/logic/Summary.py'
"""Plain-text digest of a RunReport for the results panel."""
from src.models.RunReport import RunReport


def summarize_report(report: RunReport) -> str:
    lines = []
    if report.spectrum is not None:
        lines.append("Spectrum (eigenvalue estimates):")
        lines.extend(f"  {i:>3}  {v:.6g}" for i, v in enumerate(report.spectrum, start=1))
    for stage, summary in sorted(report.convergence.items()):
        lines.append(
            f"{stage} solves: {summary['converged']}/{summary['columns']} columns converged, "
            f"{summary['total_iterations']} iterations, "
            f"worst residual {summary['worst_relative_residual']:.2e}"
        )
    if report.metrics:
        for t, value in report.metrics["precision_at"].items():
            lines.append(f"precision@{t}: {value:.4f}")
        if "test_error" in report.metrics:
            lines.append(f"test error: {report.metrics['test_error']:.4f}")
        if report.metrics.get("n_skipped_empty"):
            lines.append(f"({report.metrics['n_skipped_empty']} test rows without labels skipped)")
    if report.include_timings and report.timings:
        lines.append(", ".join(f"{k} {v:.2f}s" for k, v in report.timings.items()))
    return "\n".join(lines)
