/** Payload shapes of the curation service API, plus the relation vocabulary. */

export const RELATIONS = ["exact", "broader", "narrower", "related", "none"] as const;

export type Relation = (typeof RELATIONS)[number];

export function isRelation(value: string): value is Relation {
  return (RELATIONS as readonly string[]).includes(value);
}

export interface HealthInfo {
  status: string;
  entries: number;
  version: number;
}

export interface EntrySummary {
  id: number;
  lemma: string;
  pos: string;
  n_left: number;
  n_right: number;
  n_links: number;
  n_decided: number;
}

export interface Sense {
  text: string;
  external_id: string | null;
}

export interface DecisionState {
  relation: string;
  accepted: boolean;
}

/** One cell of the candidate grid. Link fields are null when no link is kept. */
export interface Candidate {
  source: number;
  target: number;
  relation: string | null;
  score: number | null;
  scores_by_class: Record<string, number> | null;
  decided: DecisionState | null;
}

export interface EntryDetail {
  id: number;
  lemma: string;
  pos: string;
  gender: string | null;
  meta_id: string | null;
  left_senses: Sense[];
  right_senses: Sense[];
  candidates: Candidate[];
  version: number;
}

export interface Decision {
  source: number;
  target: number;
  relation: Relation;
  accepted: boolean;
}
