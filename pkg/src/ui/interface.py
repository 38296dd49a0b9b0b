"""Abstract interface for document renderers."""

from abc import ABC, abstractmethod

HTML_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
</head>
<body>
{body}
</body>
</html>
"""


class RendererInterface(ABC):
    """Abstract base class for renderers turning a Document into HTML."""

    style: str = None

    @abstractmethod
    def render(self, doc) -> str:
        """
        Render a document as a self-contained HTML page.

        Parameters:
            doc: Annotated Document

        Returns:
            str: HTML5 text (inline CSS/SVG only)
        """
        pass

    def page(self, title: str, body: str) -> str:
        return HTML_TEMPLATE.format(title=title, body=body)
