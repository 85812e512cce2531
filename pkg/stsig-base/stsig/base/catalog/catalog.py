import importlib
import inspect
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Union

import yaml

from stsig.base.catalog.experiment import Experiment
from stsig.base.catalog.result_set import ResultSet
from stsig.base.utils import build_logger, render_template
from stsig.base.validation import ValidationSet, Validator, ValidatorObject


class ExperimentCatalog(Dict[str, Experiment]):
    def __init__(self, *args: Any, validation_set: Optional[ValidationSet] = None, **kwargs: Any):
        """The experiments available by name, plus the checks to run on their results."""
        super().__init__(*args, **kwargs)

        if validation_set is None:
            validation_set = ValidationSet()
        self.validation_set = validation_set
        self.logger = build_logger(__name__)

    def __str__(self, indents: int = 0) -> str:
        tab = "\t" * indents
        return "\n".join([f"{tab}{name}: {experiment.__class__.__name__}" for name, experiment in self.items()])

    def run(self, name: str, skip_validation: bool = False) -> ResultSet:
        """Run one experiment and validate its results.

        Args:
            name (str): The experiment to run.
            skip_validation (bool): Skip the registered result checks. Useful when debugging.

        Returns:
            ResultSet: The experiment's results.
        """
        assert name in self, f"Unknown experiment `{name}`; available: {', '.join(sorted(self))}."
        self.logger.info(f"Running experiment {name}")
        results = self[name].run()
        if not skip_validation:
            self.validation_set.validate_data(name, results)
        return results

    @classmethod
    def from_yaml(
        cls,
        path: Union[str, Path],
        parameters: Optional[Dict[str, Any]] = None,
        initialised_parameters: Optional[Dict[str, Any]] = None,
    ) -> "ExperimentCatalog":
        """Read an experiment catalog from a YAML file.

        Expected format:
        ```
        <experiment name>:
            callable: <python path to an Experiment class, or a class/static method producing one>
            args:
                <name of argument>: <value>
            validations:
                - callable: <python path to a ValidatorObject class or a check function>
                  args:
                    <name of argument>: <value>
        ```

        `validations` is optional. Argument values may themselves be `callable`/`args` objects,
        which are built recursively. Use `path.to.Class:method` for class or static methods.

        The file is rendered with Jinja using `parameters` before parsing, so whole configuration
        sections can be passed with `{{ section | tojson }}`.

        Objects in `initialised_parameters` (for instance the master `seed` or the number of
        `threads`) are passed to a callable when it has an argument of that name that was not
        given explicitly.

        Only load files you trust: building the catalog imports and calls the named code.

        Args:
            path (Union[str, Path]): The YAML file.
            parameters (Optional[Dict[str, Any]]): Values for Jinja templating.
            initialised_parameters (Optional[Dict[str, Any]]): Runtime objects to inject.

        Returns:
            ExperimentCatalog: The parsed catalog.
        """
        experiments = {}
        validation_set = ValidationSet()

        if parameters is None:
            parameters = {}
        if initialised_parameters is None:
            initialised_parameters = {}

        with open(Path(path), "r") as f:
            configuration = yaml.safe_load(render_template(f.read(), parameters))
        assert isinstance(configuration, dict), "Cannot process YAML as a catalog: should be a dictionary."

        for name, params in configuration.items():
            experiment = cls._parse_object(params, create_object=True, initialised_parameters=initialised_parameters)
            assert isinstance(experiment, Experiment), f"Catalog entry `{name}` does not produce an Experiment."
            experiments[name] = experiment

            if "validations" in params:
                validations_raw = params["validations"]
                assert isinstance(validations_raw, list), f"Validations of `{name}` should be a list."
                validation_set[name] = [cls._parse_validation(validation) for validation in validations_raw]

        return cls(validation_set=validation_set, **experiments)

    @classmethod
    def _parse_validation(cls, dct: Dict[str, Any]) -> Validator:
        callable_, args = cls._parse_object(dct, create_object=False)
        if inspect.isclass(callable_):
            assert issubclass(callable_, ValidatorObject), f"{callable_.__name__} is not a ValidatorObject."
            return callable_(**args)
        return Validator(callable=callable_, **args)

    @classmethod
    def _parse_object(
        cls,
        dct: Dict[str, Any],
        create_object: bool,
        initialised_parameters: Optional[Dict[str, Any]] = None,
    ) -> Union[Any, Tuple[Callable, Dict[str, Any]]]:
        """Recursively build an object from a `callable`/`args` dictionary.

        Args:
            dct (Dict[str, Any]): Dictionary with a `callable` import path and an `args` dictionary,
                and optionally `validations`.
            create_object (bool): Call the callable, or only return it with its parsed arguments.
            initialised_parameters (Optional[Dict[str, Any]]): Runtime objects to inject by argument name.

        Returns:
            Union[Any, Tuple[Callable, Dict[str, Any]]]: The built object, or the callable and its arguments.
        """
        assert cls._is_valid_parseable_object(
            dct
        ), "Catalog: any dictionary parsed should have a `callable` and `args` entry."

        callable_ = cls._load_class(dct["callable"])
        args = dct["args"]
        assert isinstance(args, dict), "Arguments to a parseable object should be a dict."

        if initialised_parameters is None:
            initialised_parameters = {}

        parsed_args = {}
        for arg_name, arg_value in args.items():
            if cls._is_valid_parseable_object(arg_value):
                parsed_args[arg_name] = cls._parse_object(
                    arg_value, create_object=True, initialised_parameters=initialised_parameters
                )
            else:
                parsed_args[arg_name] = arg_value

        # injected only when the callable names the argument and it was not given
        argspec = inspect.getfullargspec(callable_)
        for arg_name in argspec.args + argspec.kwonlyargs:
            if arg_name in initialised_parameters and arg_name not in parsed_args:
                parsed_args[arg_name] = initialised_parameters[arg_name]

        if create_object:
            return callable_(**parsed_args)
        return callable_, parsed_args

    @staticmethod
    def _load_class(full_path: str) -> Callable:
        """Import a class or function, or a method on a class with `path.to.Class:method`."""
        method_split = full_path.split(":")
        assert len(method_split) <= 2, f"{full_path}: Catalogs do not accept paths with more than 1 `:`"

        split_path = method_split[0].split(".")
        module = importlib.import_module(".".join(split_path[:-1]))
        loaded = getattr(module, split_path[-1])

        if len(method_split) > 1:
            return getattr(loaded, method_split[1])
        return loaded

    @staticmethod
    def _is_valid_parseable_object(dct: Any) -> bool:
        if not isinstance(dct, dict):
            return False
        options = [{"callable", "args"}, {"callable", "args", "validations"}]
        return set(dct) in options
