"""Problem-spec ingestion, evaluation and reporting."""
