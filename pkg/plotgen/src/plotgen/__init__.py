"""Figure rendering for spatialvote simulation outputs."""

from .figures import (
    render_histogram_overlay,
    render_mean_variance_scatter,
    render_state_bars,
    save_figure,
)
from .inputs import InputError, load_records, load_summaries, load_summary

__version__ = "0.1.0"
