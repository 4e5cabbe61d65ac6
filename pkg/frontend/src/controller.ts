/** The explorer itself: owns the view state, talks to the API, renders.
 *
 * Two rules hold everywhere:
 *
 * * the server is the only authority — every marking shown comes from
 *   the most recent server response, never from local simulation;
 * * one request is in flight at a time — while an action is pending all
 *   further actions are ignored and the controls render disabled.
 */

import { ApiError, type ExplorerApi } from "./api";
import { blockingPlaces, defaultChosen, placeGates, pruneChosen } from "./gating";
import { layeredLayout, type Layout } from "./layout";
import {
  renderCatalog,
  renderConsequences,
  renderControls,
  renderNet,
  renderSetup,
  renderStatus,
} from "./render";
import type {
  CapabilityName,
  ModelDetail,
  ModelSummary,
  SessionState,
} from "./types";
import { ALL_CAPABILITIES } from "./types";

export interface ViewStateSnapshot {
  selected: number | null;
  profile: CapabilityName[];
  chosen: string[];
  sessionId: string | null;
  server: SessionState | null;
  pending: boolean;
  error: string | null;
}

export class Explorer {
  private readonly api: ExplorerApi;
  private readonly sections: {
    status: HTMLElement;
    catalog: HTMLElement;
    setup: HTMLElement;
    controls: HTMLElement;
    canvas: HTMLElement;
    consequences: HTMLElement;
  };

  private catalog: ModelSummary[] = [];
  private detail: ModelDetail | null = null;
  private closureOfSelected: number[] = [];
  private layout: Layout | null = null;
  private profile = new Set<CapabilityName>(["classical"]);
  private chosen = new Set<string>();
  private sessionId: string | null = null;
  private server: SessionState | null = null;
  private pending = false;
  private error: string | null = null;
  private notice: string | null = null;

  constructor(root: HTMLElement, api: ExplorerApi) {
    this.api = api;
    const make = (className: string): HTMLElement => {
      const node = document.createElement(
        className === "catalog" ? "nav" : "section",
      );
      node.className = className;
      return node;
    };
    this.sections = {
      status: make("status"),
      catalog: make("catalog"),
      setup: make("setup"),
      controls: make("controls"),
      canvas: make("canvas"),
      consequences: make("consequences"),
    };
    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "attacknets explorer";
    header.append(title, this.sections.status);
    const workspace = document.createElement("section");
    workspace.className = "workspace";
    workspace.append(
      this.sections.setup,
      this.sections.controls,
      this.sections.canvas,
      this.sections.consequences,
    );
    const columns = document.createElement("div");
    columns.className = "columns";
    columns.append(this.sections.catalog, workspace);
    root.replaceChildren(header, columns);
  }

  get viewState(): ViewStateSnapshot {
    return {
      selected: this.detail === null ? null : this.detail.id,
      profile: ALL_CAPABILITIES.filter((c) => this.profile.has(c)),
      chosen: [...this.chosen].sort(),
      sessionId: this.sessionId,
      server: this.server,
      pending: this.pending,
      error: this.error,
    };
  }

  /** Load the catalog and draw the initial screen. */
  start(): Promise<void> {
    return this.guarded(async () => {
      this.catalog = await this.api.listModels();
    });
  }

  selectAttack(attack: number): Promise<void> {
    return this.guarded(async () => {
      await this.discardSession();
      this.detail = await this.api.getModel(attack);
      this.closureOfSelected = await this.api.closure(attack);
      this.layout = layeredLayout(this.detail.net);
      this.profile = new Set(["classical"]);
      this.chosen = defaultChosen(this.detail, this.profile);
    });
  }

  /** Setup-phase only; widening the profile auto-selects what it unlocks. */
  toggleCapability(capability: CapabilityName): void {
    if (this.pending || this.detail === null || this.sessionId !== null) {
      return;
    }
    const before = defaultChosen(this.detail, this.profile);
    if (this.profile.has(capability)) {
      this.profile.delete(capability);
    } else {
      this.profile.add(capability);
    }
    const gates = placeGates(this.detail, this.profile);
    const kept = pruneChosen(this.chosen, gates);
    for (const place of defaultChosen(this.detail, this.profile)) {
      if (!before.has(place)) {
        kept.add(place);
      }
    }
    this.chosen = kept;
    this.notice = null;
    this.render();
  }

  togglePlace(place: string): void {
    if (this.pending || this.detail === null || this.sessionId !== null) {
      return;
    }
    if (placeGates(this.detail, this.profile).get(place) !== null) {
      return; // gated choices are never sent to the server
    }
    if (this.chosen.has(place)) {
      this.chosen.delete(place);
    } else {
      this.chosen.add(place);
    }
    this.notice = null;
    this.render();
  }

  startSession(): Promise<void> {
    return this.guarded(async () => {
      if (this.detail === null) {
        return;
      }
      const profile = ALL_CAPABILITIES.filter((c) => this.profile.has(c));
      const state = await this.api.createSession(
        this.detail.id,
        profile,
        [...this.chosen].sort(),
      );
      this.server = state;
      this.sessionId = state.sessionId ?? null;
    });
  }

  /** Fires when enabled; otherwise names the blocking places, no request. */
  fireTransition(transition: string): Promise<void> {
    if (this.detail === null || this.server === null || this.sessionId === null) {
      return Promise.resolve();
    }
    const enabled = this.server.enabled.some((t) => t.id === transition);
    if (!enabled) {
      if (!this.pending) {
        const short = blockingPlaces(
          this.detail,
          this.server.marking,
          transition,
        );
        this.notice =
          `${transition} is not enabled` +
          (short.length > 0 ? `; blocked by: ${short.join(", ")}` : "");
        this.render();
      }
      return Promise.resolve();
    }
    const sessionId = this.sessionId;
    return this.guarded(async () => {
      this.server = await this.api.fire(sessionId, transition);
    });
  }

  reset(): Promise<void> {
    const sessionId = this.sessionId;
    if (sessionId === null) {
      return Promise.resolve();
    }
    return this.guarded(async () => {
      this.server = await this.api.reset(sessionId);
    });
  }

  /** Rewind one step: reset, then replay the history minus its last entry. */
  undo(): Promise<void> {
    const sessionId = this.sessionId;
    if (sessionId === null || this.server === null) {
      return Promise.resolve();
    }
    const replay = this.server.history.slice(0, -1);
    return this.guarded(async () => {
      this.server = await this.api.reset(sessionId);
      for (const transition of replay) {
        this.server = await this.api.fire(sessionId, transition);
      }
    });
  }

  refresh(): Promise<void> {
    const sessionId = this.sessionId;
    if (sessionId === null) {
      return Promise.resolve();
    }
    return this.guarded(async () => {
      this.server = await this.api.getSession(sessionId);
    });
  }

  endSession(): Promise<void> {
    return this.guarded(() => this.discardSession());
  }

  private async discardSession(): Promise<void> {
    const sessionId = this.sessionId;
    this.sessionId = null;
    this.server = null;
    if (sessionId !== null) {
      try {
        await this.api.deleteSession(sessionId);
      } catch {
        // an already-expired session is fine to forget
      }
    }
  }

  private async guarded(action: () => Promise<void>): Promise<void> {
    if (this.pending) {
      return;
    }
    this.pending = true;
    this.error = null;
    this.notice = null;
    this.render();
    try {
      await action();
    } catch (err) {
      if (err instanceof ApiError) {
        this.error = `${err.code}: ${err.message}`;
      } else {
        this.error = err instanceof Error ? err.message : String(err);
      }
    } finally {
      this.pending = false;
      this.render();
    }
  }

  render(): void {
    renderStatus(this.sections.status, this.pending, this.error, this.notice);
    renderCatalog(
      this.sections.catalog,
      this.catalog,
      this.detail === null ? null : this.detail.id,
      (attack) => void this.selectAttack(attack),
    );
    if (this.detail === null || this.layout === null) {
      this.sections.setup.replaceChildren();
      this.sections.controls.replaceChildren();
      this.sections.canvas.replaceChildren();
      this.sections.consequences.replaceChildren();
      return;
    }
    renderSetup(
      this.sections.setup,
      this.detail,
      this.profile,
      this.chosen,
      placeGates(this.detail, this.profile),
      this.sessionId !== null,
      {
        onToggleCapability: (capability) => this.toggleCapability(capability),
        onTogglePlace: (place) => this.togglePlace(place),
        onStart: () => void this.startSession(),
        onEndSession: () => void this.endSession(),
      },
    );
    renderControls(this.sections.controls, this.server, {
      onReset: () => void this.reset(),
      onUndo: () => void this.undo(),
      onRefresh: () => void this.refresh(),
    });
    renderNet(
      this.sections.canvas,
      this.detail,
      this.layout,
      this.server,
      (transition) => void this.fireTransition(transition),
    );
    renderConsequences(
      this.sections.consequences,
      this.detail,
      this.catalog,
      this.closureOfSelected,
      this.server,
    );
    if (this.pending) {
      for (const node of this.sections.setup.querySelectorAll("button,input")) {
        (node as HTMLButtonElement | HTMLInputElement).disabled = true;
      }
      for (const node of this.sections.controls.querySelectorAll("button")) {
        node.disabled = true;
      }
    }
  }
}
