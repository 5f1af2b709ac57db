from .early_stopping import EarlyStopping
from .gradcheck import (GRADCHECK_TOLERANCE, micro_corpus, micro_gradient_check,
                        micro_hyperparams)
from .losses import (LossReport, batch_loss_and_grads, corpus_loss, dependency_loss,
                     dependency_loss_grad, joint_loss, regularization, sentences_loss_and_grads,
                     tagging_loss, tagging_loss_grad)
from .optimizer import OptimizerState, adam_step
from .runner import MultiRunResult, RunResult, evaluate, load_run_f1s, multi_run
from .trainer import EpochRecord, TrainLog, train, validation_f1

__all__ = ['EarlyStopping', 'GRADCHECK_TOLERANCE', 'micro_corpus', 'micro_gradient_check',
           'micro_hyperparams', 'LossReport', 'batch_loss_and_grads', 'corpus_loss',
           'dependency_loss', 'dependency_loss_grad', 'joint_loss', 'regularization',
           'sentences_loss_and_grads', 'tagging_loss', 'tagging_loss_grad', 'OptimizerState',
           'adam_step', 'MultiRunResult', 'RunResult', 'evaluate', 'load_run_f1s', 'multi_run',
           'EpochRecord', 'TrainLog', 'train', 'validation_f1']
