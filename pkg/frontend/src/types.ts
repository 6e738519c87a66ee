// Payload types mirroring the service's interchange object syntax.

export type FrameKind = 'semantic' | 'pragmatic';
export type Coreness = 'core' | 'peripheral' | 'extra_thematic';
export type PartOfSpeech = 'noun' | 'verb' | 'adjective' | 'adverb' | 'interjection' | 'other';

export type PalmOrientation = 'up' | 'down' | 'toward_comprehender' | 'lateral' | 'inward';
export type ArmConfiguration =
  | 'extended_forward'
  | 'extended_lateral'
  | 'bent_upward'
  | 'reaching'
  | 'retracted';
export type MotionPattern = 'static_hold' | 'extend' | 'retract' | 'circular' | 'beat' | 'nod';
export type HandShape = 'open_palm' | 'fingers_flexed' | 'fingers_extended' | 'grasp';
export type ComprehenderPosition = 'facing' | 'beside' | 'other';
export type Interactivity = 'topic' | 'interactive' | 'indeterminate';
export type Provenance = 'manual' | 'classifier';

export interface FrameElementPayload {
  name: string;
  definition: string;
  coreness: Coreness;
}

export interface FramePayload {
  name: string;
  definition: string;
  kind: FrameKind;
  frame_elements?: FrameElementPayload[];
}

export interface LexicalUnitPayload {
  lemma: string;
  pos: PartOfSpeech;
  frame: string;
}

export interface MediaPayload {
  duration_ms: number;
  width_px: number;
  height_px: number;
}

export interface DocumentPayload {
  id: string;
  title: string;
  media: MediaPayload;
}

export interface SentencePayload {
  id: string;
  document: string;
  text: string;
  time_span_ms?: [number, number];
}

export interface BoxPayload {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface KeyframePayload {
  t_ms: number;
  box: BoxPayload;
}

export interface TrackPayload {
  keyframes: KeyframePayload[];
}

export interface VisualObjectPayload {
  id: string;
  document: string;
  cv_name: string;
  category_frame: string;
  category_lu: LexicalUnitPayload;
  track: TrackPayload;
}

export interface GestureFeaturesPayload {
  topic_illustrative: boolean;
  paraphrase?: string;
  paraphrase_topic_independent: boolean;
  paraphrase_addressed_to_interlocutor: boolean;
  orientation_toward_comprehender: boolean;
  palm_orientation: PalmOrientation;
  arm_configuration: ArmConfiguration;
  motion_pattern: MotionPattern;
  hand_shape: HandShape;
  comprehender_position: ComprehenderPosition;
}

export interface RankingEntryPayload {
  frame: string;
  score: string; // exact rational, e.g. "4/5"
}

export interface ClassificationResultPayload {
  interactivity: Interactivity;
  ranking: RankingEntryPayload[];
  margin: string;
  verdict?: string;
}

export interface FeAssignmentPayload {
  fe: string;
  participant: string;
}

export interface GesturePayload {
  id?: string;
  document: string;
  members: string[];
  features: GestureFeaturesPayload;
  evoked_frame?: string;
  fe_assignment?: FeAssignmentPayload[];
  provenance: Provenance;
  classifier_verdict?: ClassificationResultPayload;
  version: number;
}

export interface ApiErrorBody {
  code: 'not_found' | 'conflict' | 'validation_failed' | 'bad_request';
  rule_id: string;
  message: string;
}

export interface StatsPayload {
  documents: number;
  sentences: number;
  annotation_sets: number;
  visual_objects: number;
  gestures: number;
  gestures_by_frame: Record<string, number>;
  unclassified_gestures: number;
}

export interface ValidationReportPayload {
  ok: boolean;
  findings: { rule_id: string; entity: string; message: string }[];
}

// Feature-record defaults, matching the server's neutral values.
export const DEFAULT_FEATURES: GestureFeaturesPayload = {
  topic_illustrative: false,
  paraphrase_topic_independent: false,
  paraphrase_addressed_to_interlocutor: false,
  orientation_toward_comprehender: false,
  palm_orientation: 'lateral',
  arm_configuration: 'retracted',
  motion_pattern: 'static_hold',
  hand_shape: 'open_palm',
  comprehender_position: 'facing',
};

// Convert an exact rational string ("4/5", "1") to a number for display.
export function rationalToNumber(value: string): number {
  const [num, den] = value.split('/');
  const n = Number(num);
  return den === undefined ? n : n / Number(den);
}
