"""Slab discrete-ordinates solver with quasidiffusion acceleration."""
