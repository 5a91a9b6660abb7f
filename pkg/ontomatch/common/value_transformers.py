import re

IRI_REGEX = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:[^\s]+$")


def is_valid_iri(value: str) -> bool:
    """
    An absolute IRI for our purposes:

    1. Non-empty
    2. Starts with a scheme followed by `:`
    3. Contains no whitespace

    """
    return bool(value) and bool(IRI_REGEX.match(value))


def local_name(iri: str) -> str:
    """Text after the last `#` or `/`, or the whole value when neither occurs."""
    cut = max(iri.rfind("#"), iri.rfind("/"))
    name = iri[cut + 1 :] if cut >= 0 else iri
    return name if name else iri


def namespace_of(iri: str) -> str:
    cut = max(iri.rfind("#"), iri.rfind("/"))
    return iri[: cut + 1] if cut >= 0 else ""


def qualify_name(base: str, name: str) -> str:
    if base.endswith("#") or base.endswith("/"):
        return f"{base}{name}"
    return f"{base}#{name}"


def safe_file_component(value: str) -> str:
    return re.sub(r"[^A-Za-z0-9_\-]+", "_", value).strip("_") or "entity"
