"""newsmill - multilingual news clustering, entity extraction and linking.

The package turns daily batches of news articles into topic clusters,
extracts entities / keywords / specialist terms per cluster, links clusters
over time and across languages, learns name spelling variants and entity
relations, and serves everything through a read-only JSON API.
"""

__version__ = "0.1.0"
