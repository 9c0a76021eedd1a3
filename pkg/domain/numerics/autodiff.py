import torch

from domain.exceptions.contract_violation import ContractViolation
from domain.exceptions.numeric_error import NumericError


def backward(output, parameters):
    """
    Runs reverse-mode differentiation from a scalar output to a set of named parameters.
    The graph is the one torch recorded while the output was computed.
    :param output: A single element tensor
    :param parameters: A mapping of name to parameter tensor
    :return: A dict of name to gradient, with zeros for parameters the output does not depend on
    """
    if not isinstance(output, torch.Tensor) or output.numel() != 1:
        raise ContractViolation('backward requires a scalar output (backward).')

    names = list(parameters.keys())
    tensors = [parameters[name] for name in names]

    if not torch.isfinite(output).all():
        raise NumericError(_op_name(output), 'the scalar output is not finite')

    if not output.requires_grad:
        return {name: torch.zeros_like(tensor) for name, tensor in zip(names, tensors)}

    try:
        with torch.autograd.detect_anomaly(check_nan=True):
            gradients = torch.autograd.grad(output, tensors, allow_unused=True)
    except RuntimeError as e:
        if 'nan' in str(e).lower():
            raise NumericError(_op_name_from_message(str(e)), str(e)) from e
        raise

    return {name: (gradient if gradient is not None else torch.zeros_like(tensor))
            for name, gradient, tensor in zip(names, gradients, tensors)}


def _op_name(tensor):
    grad_fn = getattr(tensor, 'grad_fn', None)
    return grad_fn.name() if grad_fn is not None else 'leaf'


def _op_name_from_message(message):
    # torch reports "Function 'MulBackward0' returned nan values in its 0th output."
    if "'" in message:
        return message.split("'")[1]
    return 'backward'
