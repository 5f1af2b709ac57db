from .gradients import GradStore, gradient_check, numeric_gradient, relative_error
from .lstm import LSTMCache, LSTMWeights, lstm_backward, lstm_cell, lstm_cell_backward, lstm_forward
from .ops import (Tensor, affine, affine_backward, as_tensor, biaffine_table,
                  biaffine_table_backward, bilinear_score, bilinear_score_backward,
                  concat_table, concat_table_backward, cross_entropy, dropout, dropout_mask,
                  one_hot, relu, relu_backward, sigmoid, softmax, softmax_backward,
                  softmax_cross_entropy_backward)

__all__ = ['GradStore', 'gradient_check', 'numeric_gradient', 'relative_error', 'LSTMCache',
           'LSTMWeights', 'lstm_backward', 'lstm_cell', 'lstm_cell_backward', 'lstm_forward',
           'Tensor', 'affine', 'affine_backward', 'as_tensor', 'biaffine_table',
           'biaffine_table_backward', 'bilinear_score', 'bilinear_score_backward',
           'concat_table', 'concat_table_backward', 'cross_entropy', 'dropout',
           'dropout_mask', 'one_hot', 'relu', 'relu_backward', 'sigmoid', 'softmax',
           'softmax_backward', 'softmax_cross_entropy_backward']
