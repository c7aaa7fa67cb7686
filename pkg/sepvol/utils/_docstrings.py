from docrep import DocstringProcessor


class MonteCarloDocstringProcessor(DocstringProcessor):
    """Shared parameter blocks for the Monte Carlo estimators and checks."""

    param_stream = """\
    stream
        :class:`~sepvol.sampling.SeededStream`, or an integer seed used with
        stream index 0. If `None`, uses ``sepvol.settings.seed``."""

    param_samples = """\
    samples
        Number of Monte Carlo draws. If `None`, uses ``sepvol.settings.mc_samples``."""

    param_shape = """\
    shape
        :class:`~sepvol.operators.FactorShape` of the ambient space ``(ℂᴰ)^{⊗N}``."""

    param_n_workers = """\
    n_workers
        Threads used to evaluate chunks. Chunking depends only on the sample
        count, so results do not depend on this value. If `None`, uses
        ``sepvol.settings.n_workers``."""

    param_silent = """\
    silent
        If True, disables the progress bar."""

    def __init__(self):
        super().__init__(
            param_stream=self.param_stream,
            param_samples=self.param_samples,
            param_shape=self.param_shape,
            param_n_workers=self.param_n_workers,
            param_silent=self.param_silent,
        )


mc_dsp = MonteCarloDocstringProcessor()
