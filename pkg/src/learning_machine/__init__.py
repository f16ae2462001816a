"""Closed-loop lifecycle for clinical prognosis models.

Serves predictions from a deployed champion model, monitors incoming data
for drift against a logged reference, silently scores challenger models,
signals when retraining is due, retrains via hyperparameter search, and
supports temporal what-if experiments (train on one year window, test on
later ones).
"""

__version__ = "0.1.0"
