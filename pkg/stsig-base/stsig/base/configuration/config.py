import copy
from pathlib import Path
from typing import Any, Callable, Dict, Generic, List, Optional, TypeVar, Union

from stsig.base.catalog import ExperimentCatalog
from stsig.base.utils import build_logger, load_yaml_with_jinja

ConfigClass = TypeVar("ConfigClass")


class Configuration(Generic[ConfigClass]):
    """Experiment settings and the experiment catalog, loaded together.

    Use `from_hierarchical_config` to stack settings files: packaged defaults first, then a
    user config, then (when re-running a manifest) the resolved settings of an earlier run.
    """

    config: Union[Dict, ConfigClass]
    catalog: ExperimentCatalog
    parameters: Dict[str, Any]

    def __init__(
        self,
        config: Union[Dict, ConfigClass],
        catalog: ExperimentCatalog,
        parameters: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Settings plus catalog. Prefer `from_hierarchical_config`.

        Args:
            config (Union[Dict, ConfigClass]): The (optionally typed) settings.
            catalog (ExperimentCatalog): The experiments built from those settings.
            parameters (Optional[Dict[str, Any]]): The merged raw settings, as recorded in run manifests.
                Defaults to `config` when it is a dict.
        """
        self.catalog = catalog
        self.config = config
        if parameters is None:
            parameters = config if isinstance(config, dict) else {}
        self.parameters = parameters

    @classmethod
    def from_hierarchical_config(
        cls,
        parameters_paths: List[Path],
        catalog_path: Path,
        optional_parameters_paths: Optional[List[Path]] = None,
        overrides: Optional[Dict[str, Any]] = None,
        config_converter: Optional[Callable[[Dict[str, Any]], ConfigClass]] = None,
        initialised_parameters: Optional[Dict[str, Any]] = None,
    ) -> "Configuration[ConfigClass]":
        """Load settings files in order and build the catalog from the result.

        Args:
            parameters_paths (List[Path]): Settings files (YAML or JSON). Each file is Jinja templated with
                everything loaded before it and then merged in; later files win, nested sections merge key by key.
            catalog_path (Path): The experiment catalog, templated with the merged settings.
            optional_parameters_paths (Optional[List[Path]]): Settings files that may be missing. A missing file
                logs a warning; present files are treated like `parameters_paths`.
            overrides (Optional[Dict[str, Any]]): In-memory settings merged last.
            config_converter (Optional[Callable[[Dict[str, Any]], ConfigClass]]): Turns the merged dict into a
                typed object, e.g. a pydantic model. Defaults to None, keeping the dict.
            initialised_parameters (Optional[Dict[str, Any]]): Runtime objects, like the master seed, injected
                into catalog entries. They are not stored in the settings.

        Returns:
            Configuration[ConfigClass]: Settings and catalog.
        """
        logger = build_logger("from_hierarchical_config")

        if optional_parameters_paths is None:
            optional_parameters_paths = []

        parameters: Dict[str, Any] = {}
        for param_path in parameters_paths:
            parameters = cls._load_layer(parameters, param_path)

        for param_path in optional_parameters_paths:
            if Path(param_path).exists():
                parameters = cls._load_layer(parameters, param_path)
            else:
                logger.warning(f"Optional path {param_path} was not found.")

        if overrides:
            parameters = cls._nested_update(parameters, copy.deepcopy(overrides))

        config: Union[Dict, ConfigClass] = parameters
        if config_converter is not None:
            config = config_converter(parameters)

        catalog = ExperimentCatalog.from_yaml(
            path=catalog_path,
            parameters=parameters,
            initialised_parameters=initialised_parameters,
        )
        return cls(config=config, catalog=catalog, parameters=parameters)

    @classmethod
    def _load_layer(cls, parameters: Dict[str, Any], path: Union[str, Path]) -> Dict[str, Any]:
        new_params = load_yaml_with_jinja(path, params=copy.deepcopy(parameters))
        assert isinstance(new_params, dict), f"Settings file {path} should contain a mapping."
        return cls._nested_update(parameters, new_params)

    @classmethod
    def _nested_update(cls, d: Dict[str, Any], u: Dict[str, Any]) -> Dict[str, Any]:
        for k, v in u.items():
            if isinstance(v, dict) and isinstance(d.get(k), dict):
                d[k] = cls._nested_update(d[k], v)
            else:
                d[k] = v
        return d
