from .table_file import FLOAT_FORMAT, TableFile
