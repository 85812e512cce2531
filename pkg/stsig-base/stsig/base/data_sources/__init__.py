from .data_source import DataSink, DataSource, FileDataSource, WriteableDataSource
from .json_file import JsonFile
