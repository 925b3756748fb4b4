/** Response shapes of the reportminer HTTP API. */

export interface Stats {
  paragraph_count: number;
  token_count: number;
  vocab_size: number;
}

export interface SearchHit {
  para_id: string;
  doc_id: string;
  ryan_number: string | null;
  snippet: string;
  labels: string[];
  entities: string[];
}

export interface SearchPage {
  total: number;
  page: number;
  page_size: number;
  hits: SearchHit[];
}

export interface Mention {
  start: number;
  end: number;
  surface: string;
  entity_type: string;
  canonical_id: string;
}

export interface ParagraphDetail {
  para_id: string;
  doc_id: string;
  ordinal: number;
  chapter_no: number;
  doc_title: string;
  ryan_number: string | null;
  text: string;
  annotations: { label: string; source: string; confidence: number }[];
  mentions: Mention[];
}

export interface Entity {
  canonical_id: string;
  display_name: string;
  entity_type: string;
  mention_count: number;
  documents: string[];
}

export interface EntityPage {
  total: number;
  page: number;
  page_size: number;
  entities: Entity[];
}

export interface TimelineHop {
  doc_id: string;
  ordinal: number;
  para_id: string;
  surface: string;
}

export interface Timeline {
  canonical_id: string;
  hops: TimelineHop[];
}

export interface GraphNode {
  id: string;
  type: string;
  degree: number;
  weighted_degree: number;
}

export interface GraphEdge {
  a: string;
  b: string;
  weight: number;
  evidence: string[];
}

export interface GraphData {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface TransferRule {
  antecedent: string[];
  consequent: string[];
  support: number;
  confidence: number;
  lift: number;
}

export interface Flow {
  from: string;
  to: string;
  count: number;
}

export interface LexiconSummary {
  name: string;
  seed_terms: string[];
  size: number;
}
