# -*- coding: utf-8 -*-

"""Provide a base class for Monte-Carlo estimates of generic splitting types.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSampleError, HypothesisError

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 5
DEFAULT_SEED = 0


@dataclass
class TrialRecord:
    """Outcome of one random draw."""
    trial: int
    seed: int
    splitting: object
    data: dict = field(default_factory=dict)


def trial_seeds(seed, trials):
    """One 32-bit seed per trial, split deterministically from ``seed``."""
    return [int(s) for s in np.random.SeedSequence(int(seed)).generate_state(int(trials))]


def dominant_splitting(splittings):
    """
    Splitting whose h0 profile is twist-wise below every other one

    When no profile is below all others, the profile with the smallest total
    over the common twist window is returned.
    """
    splittings = list(splittings)
    for candidate in splittings:
        if all(candidate.dominated_by(other) for other in splittings):
            return candidate
    logger.warning('no observed splitting is dominated by all others')
    return min(splittings, key=lambda s: sum(s.profile(*_common_window(splittings))))


def _common_window(splittings):
    entries = [a for s in splittings for a in s.summands] or [0]
    return -max(entries) - 1, -min(entries) + 1


class MonteCarloSplittingAlgorithm(ABC):
    """
    Abstract base class for Monte-Carlo estimates of generic splitting types

    :trials: integer, number of random draws

    :seed: integer, seed of the run; each trial gets its own stream split from it

    :verbose: verbosity parameter

    By semicontinuity every draw gives an h0 profile bounding the generic one
    from above, so the twist-wise smallest observed profile is kept.
    """

    def __init__(self, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, verbose=False):
        if int(trials) < 1:
            raise HypothesisError('at least one trial is needed', trials=trials)
        self.trials = int(trials)
        self.seed = int(seed)
        self.verbose = verbose
        self.samples = []
        self.splitting = None
        self.nb_degenerate = 0

    @abstractmethod
    def sample(self, rng):
        """
        Draw one random instance

        Returns a pair (splitting, data dictionary), or None when the draw is
        degenerate and must not count.
        """
        pass

    def select_samples(self, samples):
        """Hook restricting the records used for the estimate."""
        return samples

    #Function running the trials
    def compute_splitting(self):
        """
        Function running every trial and keeping the dominance-best splitting
        """
        self.samples = []
        self.nb_degenerate = 0
        log = logger.info if self.verbose else logger.debug
        log('trial | seed       | splitting')
        for index, seed in enumerate(trial_seeds(self.seed, self.trials)):
            outcome = self.sample(np.random.default_rng(seed))
            if outcome is None:
                self.nb_degenerate += 1
                log('{:5d} | {:10d} | degenerate'.format(index, seed))
                continue
            splitting, data = outcome
            self.samples.append(TrialRecord(index, seed, splitting, data))
            log('{:5d} | {:10d} | {}'.format(index, seed, splitting))

        kept = self.select_samples(self.samples)
        if not kept:
            raise DegenerateSampleError('every sampled instance was degenerate',
                                        trials=self.trials, seed=self.seed)
        self.splitting = dominant_splitting(r.splitting for r in kept)
        return self.splitting

    #Accessor to the estimated generic splitting
    def getSplitting(self):
        """
        Accessor to the estimated generic splitting type
        """
        return self.splitting

    #Accessor to the trial records
    def getSamples(self):
        """
        Accessor to the records of the non degenerate trials
        """
        return self.samples

    #Accessor to the observed splittings
    def getObservedSplittings(self):
        return [r.splitting for r in self.samples]

    def getTrialsNumber(self):
        return self.trials

    #Accessor to the number of degenerate draws
    def getDegenerateNumber(self):
        return self.nb_degenerate
