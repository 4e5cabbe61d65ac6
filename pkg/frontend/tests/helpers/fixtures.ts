/** Test doubles: a faithful copy of the majority-attack wire payload and
 * a fake API that enforces the same rules as the real service (capability
 * gating on create, enabling checks on fire), so controller tests exercise
 * the same contract the server holds.
 */

import { ApiError, type ExplorerApi } from "../../src/api";
import type {
  CapabilityName,
  ModelDetail,
  ModelSummary,
  SessionState,
} from "../../src/types";

export const ATTACK_NAMES: Record<number, string> = {
  1: "51% Attack",
  2: "Impersonation",
  3: "Sybil",
  4: "Eclipse",
  5: "Selfish-Mining",
  6: "Double Spending",
  7: "Finney",
  8: "DDoS",
  9: "DNS",
  10: "BGP Hijacking",
  11: "Block Withholding",
  12: "Balance",
  13: "Replay",
};

const QUANTUM_IMPACTED = new Set([1, 2, 5, 6, 7, 11, 12]);

export function catalogFixture(): ModelSummary[] {
  return Object.entries(ATTACK_NAMES).map(([id, name]) => ({
    id: Number(id),
    name,
    quantumImpacted: QUANTUM_IMPACTED.has(Number(id)),
    stride: Number(id) === 1 ? ["T", "D"] : ["T"],
    vulnerabilities: ["network"],
    motivations: ["financial-gain"],
    influences: Number(id) === 1 ? [6] : [],
  }));
}

const L = (id: string) => `${id} description`;

export function majorityAttackDetail(): ModelDetail {
  const pre = (
    id: string,
    capability: CapabilityName | null,
    group: string | null,
  ) => ({ id, label: L(id), kind: "pre" as const, capability, group });
  const post = (id: string) => ({
    id,
    label: L(id),
    kind: "post" as const,
    capability: null,
    group: null,
  });
  const internal = (id: string) => ({
    id,
    label: L(id),
    kind: "internal" as const,
    capability: null,
    group: null,
  });
  const arc = (source: string, target: string, readOnly = false) => ({
    source,
    target,
    weight: 1,
    readOnly,
  });
  return {
    id: 1,
    name: "51% Attack",
    quantumImpacted: true,
    stride: ["T", "D"],
    vulnerabilities: ["crypto-algorithm", "consensus-mechanism", "mining-pool"],
    motivations: ["financial-gain", "harm-others", "harm-system"],
    influences: [6],
    net: {
      name: "51% Attack",
      places: [
        internal("I1"),
        internal("I2"),
        pre("P1a1", "classical", "majority"),
        pre("P1a2", "quantum", "majority"),
        pre("P1b", "classical", "majority"),
        pre("P1c", "classical", "majority"),
        pre("P2", null, null),
        post("P3"),
        post("P4"),
        post("P5"),
        post("P6"),
        post("P7"),
      ],
      transitions: [
        { id: "T1", label: L("T1") },
        { id: "T1a2", label: L("T1a2") },
        { id: "T1b", label: L("T1b") },
        { id: "T1c", label: L("T1c") },
        { id: "T2", label: L("T2") },
        { id: "T3", label: L("T3") },
      ],
      arcs: [
        arc("I1", "T2"),
        arc("I2", "T3"),
        arc("P1a1", "T1", true),
        arc("P1a2", "T1a2", true),
        arc("P1b", "T1b", true),
        arc("P1c", "T1c", true),
        arc("P2", "T1"),
        arc("P2", "T1a2"),
        arc("P2", "T1b"),
        arc("P2", "T1c"),
        arc("T1", "I1"),
        arc("T1a2", "I1"),
        arc("T1b", "I1"),
        arc("T1c", "I1"),
        arc("T2", "I2"),
        arc("T3", "P3"),
        arc("T3", "P4"),
        arc("T3", "P5"),
        arc("T3", "P6"),
        arc("T3", "P7"),
      ],
      initialMarking: {},
    },
    preconditions: [
      { place: "P1a1", capability: "classical", group: "majority" },
      { place: "P1a2", capability: "quantum", group: "majority" },
      { place: "P1b", capability: "classical", group: "majority" },
      { place: "P1c", capability: "classical", group: "majority" },
      { place: "P2", capability: null, group: null },
    ],
    postconditions: ["P3", "P4", "P5", "P6", "P7"],
    provenanceNote: "",
    dot: 'digraph "51% Attack" {}',
  };
}

interface FakeSession {
  attack: number;
  profile: CapabilityName[];
  chosen: string[];
  marking: Record<string, number>;
  history: string[];
}

/** In-memory stand-in for the service, same rules, same error codes. */
export class FakeApi implements ExplorerApi {
  readonly calls: string[] = [];
  private readonly details: Map<number, ModelDetail>;
  private readonly closures: Map<number, number[]>;
  private readonly sessions = new Map<string, FakeSession>();
  private counter = 0;
  private holdGate: Promise<void> | null = null;

  constructor(
    details: ModelDetail[] = [majorityAttackDetail()],
    closures: Record<number, number[]> = { 1: [6] },
  ) {
    this.details = new Map(details.map((d) => [d.id, d]));
    this.closures = new Map(
      Object.entries(closures).map(([k, v]) => [Number(k), v]),
    );
  }

  /** Make the next request block until the returned release is called. */
  hold(): () => void {
    let release: () => void = () => {};
    this.holdGate = new Promise((resolve) => {
      release = resolve;
    });
    return release;
  }

  private async gate(): Promise<void> {
    if (this.holdGate !== null) {
      const gate = this.holdGate;
      this.holdGate = null;
      await gate;
    }
  }

  private detail(attack: number): ModelDetail {
    const detail = this.details.get(attack);
    if (!detail) {
      throw new ApiError(404, {
        code: "UNKNOWN_ATTACK",
        message: `unknown attack id ${attack}`,
        details: {},
      });
    }
    return detail;
  }

  private payload(id: string, session: FakeSession): SessionState {
    const detail = this.detail(session.attack);
    const enabled = detail.net.transitions
      .filter((t) =>
        detail.net.arcs
          .filter((a) => a.target === t.id)
          .every((a) => (session.marking[a.source] ?? 0) >= a.weight),
      )
      .map((t) => ({ id: t.id, label: t.label }));
    const marking: Record<string, number> = {};
    for (const place of Object.keys(session.marking).sort()) {
      const count = session.marking[place] ?? 0;
      if (count > 0) {
        marking[place] = count;
      }
    }
    return {
      sessionId: id,
      attack: session.attack,
      name: detail.name,
      profile: session.profile,
      chosen: [...session.chosen].sort(),
      marking,
      enabled,
      satisfiedPostconditions: detail.postconditions.filter(
        (p) => (session.marking[p] ?? 0) >= 1,
      ),
      history: [...session.history],
    };
  }

  async listModels(): Promise<ModelSummary[]> {
    await this.gate();
    this.calls.push("listModels()");
    return catalogFixture();
  }

  async getModel(attack: number): Promise<ModelDetail> {
    await this.gate();
    this.calls.push(`getModel(${attack})`);
    return this.detail(attack);
  }

  async closure(attack: number): Promise<number[]> {
    await this.gate();
    this.calls.push(`closure(${attack})`);
    return this.closures.get(attack) ?? [];
  }

  async createSession(
    attack: number,
    profile: CapabilityName[],
    chosen: string[],
  ): Promise<SessionState> {
    await this.gate();
    this.calls.push(`createSession(${attack}, [${chosen.join(",")}])`);
    const detail = this.detail(attack);
    const held = new Set(profile);
    for (const place of chosen) {
      const spec = detail.preconditions.find((p) => p.place === place);
      if (!spec) {
        throw new ApiError(422, {
          code: "INVALID_INPUT",
          message: `place '${place}' is not a precondition place of '${detail.name}'`,
          details: { chosen },
        });
      }
      if (spec.capability !== null && !held.has(spec.capability)) {
        throw new ApiError(422, {
          code: "CAPABILITY_MISSING",
          message: `place '${place}' requires the '${spec.capability}' capability`,
          details: { place, missing: spec.capability },
        });
      }
    }
    this.counter += 1;
    const id = `fake-session-${this.counter}`;
    const marking: Record<string, number> = {};
    for (const place of chosen) {
      marking[place] = 1;
    }
    this.sessions.set(id, {
      attack,
      profile,
      chosen: [...chosen],
      marking,
      history: [],
    });
    return this.payload(id, this.session(id));
  }

  private session(id: string): FakeSession {
    const session = this.sessions.get(id);
    if (!session) {
      throw new ApiError(404, {
        code: "SESSION_NOT_FOUND",
        message: `no session '${id}'`,
        details: {},
      });
    }
    return session;
  }

  async getSession(sessionId: string): Promise<SessionState> {
    await this.gate();
    this.calls.push(`getSession(${sessionId})`);
    return this.payload(sessionId, this.session(sessionId));
  }

  async fire(sessionId: string, transition: string): Promise<SessionState> {
    await this.gate();
    this.calls.push(`fire(${sessionId}, ${transition})`);
    const session = this.session(sessionId);
    const detail = this.detail(session.attack);
    const inputs = detail.net.arcs.filter((a) => a.target === transition);
    const outputs = detail.net.arcs.filter((a) => a.source === transition);
    const ok = inputs.every(
      (a) => (session.marking[a.source] ?? 0) >= a.weight,
    );
    if (!ok) {
      throw new ApiError(409, {
        code: "TRANSITION_NOT_ENABLED",
        message: `transition '${transition}' is not enabled`,
        details: { transition },
      });
    }
    for (const a of inputs) {
      if (!a.readOnly) {
        session.marking[a.source] = (session.marking[a.source] ?? 0) - a.weight;
      }
    }
    for (const a of outputs) {
      session.marking[a.target] = (session.marking[a.target] ?? 0) + a.weight;
    }
    session.history.push(transition);
    return this.payload(sessionId, session);
  }

  async reset(sessionId: string): Promise<SessionState> {
    await this.gate();
    this.calls.push(`reset(${sessionId})`);
    const session = this.session(sessionId);
    session.marking = {};
    for (const place of session.chosen) {
      session.marking[place] = 1;
    }
    session.history = [];
    return this.payload(sessionId, session);
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.gate();
    this.calls.push(`deleteSession(${sessionId})`);
    this.session(sessionId);
    this.sessions.delete(sessionId);
  }
}
