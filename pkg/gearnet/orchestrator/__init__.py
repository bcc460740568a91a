"""Experimental protocol: pretraining, transfer, the training-fraction sweep and its graph."""
