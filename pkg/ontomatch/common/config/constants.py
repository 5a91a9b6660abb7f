CONTENT_ENCODING = "utf-8"

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
ALIGN_NS = "http://knowledgeweb.semanticweb.org/heterogeneity/alignment#"
EDOAL_NS = "http://ns.inria.org/edoal/1.0/#"
# Accepted on input only
EDOAL_NS_VARIANTS = [EDOAL_NS, "http://ns.inria.org/edoal/1.0/"]

RDF_TYPE = RDF_NS + "type"
RDFS_LABEL = RDFS_NS + "label"
RDFS_COMMENT = RDFS_NS + "comment"
RDFS_SUBCLASS_OF = RDFS_NS + "subClassOf"

OWL_ONTOLOGY = OWL_NS + "Ontology"
OWL_CLASS = OWL_NS + "Class"
RDFS_CLASS = RDFS_NS + "Class"
OWL_OBJECT_PROPERTY = OWL_NS + "ObjectProperty"
OWL_DATATYPE_PROPERTY = OWL_NS + "DatatypeProperty"
OWL_ANNOTATION_PROPERTY = OWL_NS + "AnnotationProperty"
OWL_NAMED_INDIVIDUAL = OWL_NS + "NamedIndividual"

# Standard prefixes the repair steps know how to declare
KNOWN_ALIGNMENT_PREFIXES = {
    "align": ALIGN_NS,
    "edoal": EDOAL_NS,
    "rdf": RDF_NS,
    "xsd": XSD_NS,
}
KNOWN_TURTLE_PREFIXES = {
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "owl": OWL_NS,
    "xsd": XSD_NS,
}

# Entities lacking rdf:type in these namespaces never enter a module
STANDARD_VOCABULARY_PREFIXES = ["http://www.w3.org", "http://ns.inria.org/edoal/"]

EOS_MARKERS = [
    "<|endoftext|>",
    "<|end_of_text|>",
    "<|eot_id|>",
    "<|im_end|>",
    "<|end|>",
    "</s>",
]

DEFAULT_ALIGNMENT_LEVEL = "2EDOAL"
DEFAULT_ALIGNMENT_TYPE = "**"
RELATION_SYMBOLS = ["=", "<", ">"]

DEFAULT_ANCHORS_K = 10
DEFAULT_CANDIDATES_K = 5
DEFAULT_HOPS = 1
DEFAULT_SUPERCLASS_DEPTH = 5
DEFAULT_TOKEN_BUDGET = 6500
MIN_TOKEN_BUDGET = 256
DEFAULT_DAMPING = 0.85
DEFAULT_PAGERANK_EPS = 1e-10
DEFAULT_PAGERANK_MAX_ITER = 100

DEFAULT_MAX_DEPTH = 3
DEFAULT_MIN_CELLS = 1
DEFAULT_MAX_CELLS = 5

# Corpus composition of the reference synthetic dataset
CORPUS_POSITIVE_PAIRS = 4650
CORPUS_EMPTY_PAIRS = 2000

SYNTHETIC_ONTOLOGY_IRI = "http://example.org/synthetic/{seed}/{side}"
SYNTHETIC_TOPICS = [
    "academic conferences",
    "astronomy",
    "banking",
    "botany",
    "cooking recipes",
    "film production",
    "football leagues",
    "hospital care",
    "library catalogues",
    "maritime shipping",
    "music festivals",
    "public transport",
    "real estate",
    "software projects",
    "wine making",
]

MOCK_EMBEDDING_DIM = 64

CORPUS_FILE_NAME = "corpus.jsonl"
MANIFEST_FILE_NAME = "manifest.json"
MODULE_PAIRS_FILE_NAME = "module_pairs.jsonl"
REJECTS_DIR_NAME = "rejects"
FINAL_ALIGNMENT_FILE_NAME = "final.edoal"
REPORT_FILE_NAME = "report.json"
RUNS_DIR_NAME = "runs"
RUN_TIMESTAMP_FORMAT = "%Y%m%dT%H%M%S"
