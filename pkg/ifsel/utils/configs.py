import pathlib
from typing import Any, Dict, Generic, Mapping, Type, TypeVar, Union

import yaml


T = TypeVar("T")


def get_class(classname: Union[str, Type[T]], registry: Mapping[str, Type[T]]) -> Type[T]:
    """Gets the class registered under the given name.

    Returns classname directly if it is already a class.

    Args:
        classname: Registered class name (case insensitive).
        registry: Mapping from lowercase name to class.

    Returns:
        Class.
    """
    if not isinstance(classname, str):
        return classname

    try:
        return registry[classname.lower()]
    except KeyError:
        raise KeyError(
            f"Cannot find {classname}, expected one of {sorted(registry.keys())}"
        )


def parse_class(
    config: Mapping[str, Any], key: str, registry: Mapping[str, Type[T]]
) -> Type[T]:
    """Parses the class from a config.

    Args:
        config: Config dict.
        key: Dict key containing class name as its value.
        registry: Mapping from lowercase name to class.

    Returns:
        Class.
    """
    if key not in config:
        raise KeyError(f"{key} missing from config")
    return get_class(config[key], registry)


def parse_kwargs(config: Mapping[str, Any], key: str) -> Dict:
    """Parses the kwargs from a config.

    Args:
        config: Config dict.
        key: Dict key containing kwargs as its value.

    Returns:
        Kwargs or empty dict.
    """
    try:
        kwargs = config[key]
    except KeyError:
        return {}
    return {} if kwargs is None else dict(kwargs)


def load_config(path: Union[str, pathlib.Path]) -> Dict[str, Any]:
    """Loads a yaml config from path.

    Args:
        path: Path to the config file or to a directory containing `config.yaml`.

    Returns:
        Config dict.
    """
    path = pathlib.Path(path)
    config_path = path if path.suffix in (".yaml", ".yml") else path / "config.yaml"

    with open(config_path, "r") as f:
        config = yaml.safe_load(f)

    if not isinstance(config, dict):
        raise ValueError(f"{config_path} does not contain a yaml mapping")
    return config


def dump_config(config: Mapping[str, Any]) -> str:
    """Serializes a config dict to yaml, preserving key order."""
    return yaml.safe_dump(dict(config), sort_keys=False, default_flow_style=False)


class Factory(Generic[T]):
    """Base factory class.

    The config names a class under `key` and its constructor kwargs under
    `{key}_kwargs`.
    """

    def __init__(
        self,
        config: Mapping[str, Any],
        key: str,
        registry: Mapping[str, Type[T]],
    ):
        """Parses the config.

        Args:
            config: Config dict.
            key: Key of class definition in the config dict.
            registry: Mapping from lowercase name to class.
        """
        self._config = dict(config)
        self._cls = parse_class(config, key, registry)
        self._kwargs = parse_kwargs(config, f"{key}_kwargs")
        self._key = key

    @property
    def config(self) -> Dict[str, Any]:
        """Loaded config dict."""
        return self._config

    @property
    def cls(self) -> Type[T]:
        """Parsed class."""
        return self._cls

    @property
    def kwargs(self) -> Dict[str, Any]:
        """Parsed class kwargs."""
        return self._kwargs

    def __call__(self, *args, **kwargs) -> T:
        """Creates an instance of the class.

        Args:
            *args: Constructor args.
            **kwargs: Constructor kwargs, merged over the config kwargs.

        Returns:
            Class instance.
        """
        merged_kwargs = dict(self.kwargs)
        merged_kwargs.update(kwargs)
        return self.cls(*args, **merged_kwargs)
