from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from jinja2 import StrictUndefined, Template


def load_yaml_with_jinja(file_path: Union[str, Path], params: Optional[Dict[str, Any]] = None) -> Any:
    """Load a YAML (or JSON) parameter file after rendering it as a Jinja template.

    JSON is a subset of YAML, so experiment configs written as JSON go through the same path.

    Args:
        file_path (Union[str, Path]): The file to load.
        params (Optional[Dict[str, Any]]): Values available to the template. Defaults to none.

    Returns:
        Any: The parsed document. An empty file gives an empty dict.
    """
    with open(file_path, "r") as file:
        file_content = file.read()
    rendered = render_template(file_content, {} if params is None else params)
    loaded = yaml.safe_load(rendered)
    return {} if loaded is None else loaded


def render_template(string: str, configuration: Dict[str, Any]) -> str:
    """Render `string` with Jinja, failing on undefined variables.

    Nested values are reachable with dots, e.g. `{{ network.deployment_ratio }}`, and whole
    sections can be inlined with the builtin filter: `{{ sts_link | tojson }}`.

    Args:
        string (str): The template text.
        configuration (Dict[str, Any]): The values to substitute.

    Returns:
        str: The rendered text.
    """
    return Template(string, undefined=StrictUndefined).render(configuration)
