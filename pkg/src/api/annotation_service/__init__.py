from api.annotation_service.client import AnnotationServiceClient, fetch_annotations
