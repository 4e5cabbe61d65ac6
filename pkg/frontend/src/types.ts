/** Wire shapes of the attacknets HTTP API, mirrored field for field. */

export type CapabilityName = "classical" | "quantum" | "physical";

export const ALL_CAPABILITIES: readonly CapabilityName[] = [
  "classical",
  "quantum",
  "physical",
];

export interface ModelSummary {
  id: number;
  name: string;
  quantumImpacted: boolean;
  stride: string[];
  vulnerabilities: string[];
  motivations: string[];
  influences: number[];
}

export interface PlaceInfo {
  id: string;
  label: string;
  kind: "pre" | "post" | "internal";
  capability: CapabilityName | null;
  group: string | null;
}

export interface TransitionInfo {
  id: string;
  label: string;
}

export interface ArcInfo {
  source: string;
  target: string;
  weight: number;
  readOnly: boolean;
}

export interface NetInfo {
  name: string;
  places: PlaceInfo[];
  transitions: TransitionInfo[];
  arcs: ArcInfo[];
  initialMarking: Record<string, number>;
}

export interface PreconditionInfo {
  place: string;
  capability: CapabilityName | null;
  group: string | null;
}

export interface ModelDetail extends ModelSummary {
  net: NetInfo;
  preconditions: PreconditionInfo[];
  postconditions: string[];
  provenanceNote: string;
  dot: string;
}

export interface SessionState {
  sessionId?: string;
  attack: number;
  name: string;
  profile: CapabilityName[];
  chosen: string[];
  marking: Record<string, number>;
  enabled: TransitionInfo[];
  satisfiedPostconditions: string[];
  history: string[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: unknown;
}
