from .parser import dump_model, entry_reader, get_model_treater, model_reader

__all__ = (
    'dump_model',
    'entry_reader',
    'get_model_treater',
    'model_reader',
)
