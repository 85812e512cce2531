from . import catalog, code, configuration, data_sources, gf, icrm, validation
