from .sentence_graph import Edge, SentenceGraph, build_graph, incident_edges, split_enhanced_label
