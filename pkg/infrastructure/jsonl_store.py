import json

from domain.exceptions.format_invalid import FormatInvalid
from infrastructure.io_wrapper import logging_wrapper


@logging_wrapper
def write_jsonl(path, records):
    """
    Writes pydantic records as line-delimited JSON, replacing the file
    """
    with open(path, 'w', encoding='utf-8') as file:
        for record in records:
            file.write(record.model_dump_json() + '\n')


@logging_wrapper
def append_jsonl(path, record):
    with open(path, 'a', encoding='utf-8') as file:
        file.write(record.model_dump_json() + '\n')


@logging_wrapper
def read_jsonl(path, model):
    """
    Reads line-delimited JSON into pydantic models, skipping blank lines
    :param path: The file
    :param model: The pydantic model class of each line
    :return: A list of model instances
    """
    records = []
    with open(path, 'r', encoding='utf-8') as file:
        for number, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                records.append(model.model_validate_json(line))
            except ValueError as e:
                raise FormatInvalid(path, f'line {number}: {e}') from e
    return records
