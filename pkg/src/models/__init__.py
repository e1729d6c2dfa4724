"""Problem, transport, iteration and Fourier data models."""
