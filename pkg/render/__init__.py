from .report_renderer import ReportRenderer, atomic_write, FORMATS

__all__ = ['ReportRenderer', 'atomic_write', 'FORMATS']
