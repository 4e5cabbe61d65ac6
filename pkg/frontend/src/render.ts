/** DOM builders for the explorer screens.
 *
 * All of these rebuild their container from the data they are handed and
 * attach the callbacks they are given; none of them keep state. Token
 * dots and the marking readout are always drawn from the last server
 * response — the client never computes a marking itself.
 */

import type { Layout } from "./layout";
import type {
  CapabilityName,
  ModelDetail,
  ModelSummary,
  SessionState,
} from "./types";
import { ALL_CAPABILITIES } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const PLACE_RADIUS = 20;
const TRANSITION_W = 16;
const TRANSITION_H = 44;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function svg(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

/** Canonical one-line form of a marking: sorted, zero counts omitted. */
export function markingText(marking: Record<string, number>): string {
  const parts = Object.keys(marking)
    .filter((place) => (marking[place] ?? 0) > 0)
    .sort()
    .map((place) => `${place}=${marking[place]}`);
  return parts.length > 0 ? parts.join(" ") : "(empty)";
}

export function renderCatalog(
  container: HTMLElement,
  catalog: ModelSummary[],
  selected: number | null,
  onSelect: (attack: number) => void,
): void {
  const items = catalog.map((model) => {
    const button = el(
      "button",
      {
        class: `attack-entry${model.id === selected ? " selected" : ""}`,
        "data-attack": String(model.id),
        type: "button",
      },
      el("span", { class: "attack-number" }, String(model.id)),
      el("span", { class: "attack-name" }, model.name),
    );
    if (model.quantumImpacted) {
      button.append(el("span", { class: "badge quantum" }, "quantum"));
    }
    const chips = el("span", { class: "stride-chips" });
    for (const letter of model.stride) {
      chips.append(el("span", { class: "chip stride-chip" }, letter));
    }
    button.append(chips);
    button.addEventListener("click", () => onSelect(model.id));
    return el("li", {}, button);
  });
  container.replaceChildren(
    el("h2", {}, "Attacks"),
    el("ul", { class: "attack-list" }, ...items),
  );
}

export interface SetupHandlers {
  onToggleCapability: (capability: CapabilityName) => void;
  onTogglePlace: (place: string) => void;
  onStart: () => void;
  onEndSession: () => void;
}

export function renderSetup(
  container: HTMLElement,
  detail: ModelDetail,
  profile: ReadonlySet<CapabilityName>,
  chosen: ReadonlySet<string>,
  gates: ReadonlyMap<string, string | null>,
  sessionActive: boolean,
  handlers: SetupHandlers,
): void {
  const capRow = el("div", { class: "capability-toggles" });
  for (const capability of ALL_CAPABILITIES) {
    const input = el("input", {
      type: "checkbox",
      "data-capability": capability,
    }) as HTMLInputElement;
    input.checked = profile.has(capability);
    input.disabled = sessionActive;
    input.addEventListener("change", () =>
      handlers.onToggleCapability(capability),
    );
    capRow.append(el("label", { class: "capability" }, input, capability));
  }

  const labels = new Map(detail.net.places.map((p) => [p.id, p.label]));
  const choiceList = el("ul", { class: "precondition-choices" });
  for (const pre of detail.preconditions) {
    const reason = gates.get(pre.place) ?? null;
    const input = el("input", {
      type: "checkbox",
      "data-choice": pre.place,
    }) as HTMLInputElement;
    input.checked = chosen.has(pre.place);
    input.disabled = sessionActive || reason !== null;
    input.addEventListener("change", () => handlers.onTogglePlace(pre.place));
    const item = el(
      "label",
      { class: `place-choice${reason !== null ? " gated" : ""}` },
      input,
      el("span", { class: "place-id" }, pre.place),
    );
    if (pre.capability !== null) {
      item.append(el("span", { class: "chip cap-tag" }, pre.capability));
    }
    if (pre.group !== null) {
      item.append(el("span", { class: "chip group-tag" }, `⇄ ${pre.group}`));
    }
    item.append(
      el("span", { class: "place-label" }, labels.get(pre.place) ?? ""),
    );
    if (reason !== null) {
      item.append(el("span", { class: "gate-reason" }, reason));
    }
    choiceList.append(el("li", {}, item));
  }

  const action = sessionActive
    ? el(
        "button",
        { type: "button", "data-action": "end" },
        "New setup (discard session)",
      )
    : el("button", { type: "button", "data-action": "start" }, "Start session");
  action.addEventListener("click", () =>
    sessionActive ? handlers.onEndSession() : handlers.onStart(),
  );

  container.replaceChildren(
    el("h2", {}, `Setup — ${detail.name}`),
    el("p", { class: "hint" }, "Attacker capabilities:"),
    capRow,
    el("p", { class: "hint" }, "Preconditions to assume:"),
    choiceList,
    action,
  );
}

export function renderNet(
  container: HTMLElement,
  detail: ModelDetail,
  layout: Layout,
  server: SessionState | null,
  onTransitionClick: (transition: string) => void,
): void {
  const marking = server?.marking ?? {};
  const enabledIds = new Set((server?.enabled ?? []).map((t) => t.id));
  const satisfied = new Set(server?.satisfiedPostconditions ?? []);

  const root = svg("svg", {
    viewBox: `0 0 ${layout.width} ${layout.height}`,
    width: String(layout.width),
    height: String(layout.height),
    class: "net-canvas",
    role: "img",
  });
  root.append(
    svg(
      "defs",
      {},
      svg(
        "marker",
        {
          id: "arrowhead",
          markerWidth: "8",
          markerHeight: "8",
          refX: "7",
          refY: "3",
          orient: "auto",
        },
        svg("path", { d: "M0,0 L7,3 L0,6 z" }),
      ),
    ),
  );

  const at = (id: string) => layout.positions.get(id) ?? { x: 0, y: 0 };
  for (const arc of detail.net.arcs) {
    const from = at(arc.source);
    const to = at(arc.target);
    const line = svg("line", {
      x1: String(from.x),
      y1: String(from.y),
      x2: String(to.x),
      y2: String(to.y),
      class: `arc${arc.readOnly ? " read-arc" : ""}`,
      "marker-end": "url(#arrowhead)",
    });
    root.append(line);
    if (arc.weight > 1) {
      root.append(
        svg(
          "text",
          {
            x: String((from.x + to.x) / 2),
            y: String((from.y + to.y) / 2 - 6),
            class: "arc-weight",
          },
          `×${arc.weight}`,
        ),
      );
    }
  }

  for (const place of detail.net.places) {
    const { x, y } = at(place.id);
    const tokens = marking[place.id] ?? 0;
    const group = svg("g", {
      class:
        `place kind-${place.kind}` +
        (satisfied.has(place.id) ? " satisfied" : ""),
      "data-place": place.id,
      "data-tokens": String(tokens),
    });
    group.append(
      svg("circle", {
        cx: String(x),
        cy: String(y),
        r: String(PLACE_RADIUS),
      }),
      svg("title", {}, `${place.id}: ${place.label}`),
      svg(
        "text",
        { x: String(x), y: String(y + PLACE_RADIUS + 14), class: "node-id" },
        place.id,
      ),
    );
    if (tokens === 1) {
      group.append(
        svg("circle", { cx: String(x), cy: String(y), r: "6", class: "token" }),
      );
    } else if (tokens > 1) {
      group.append(
        svg("circle", { cx: String(x), cy: String(y), r: "6", class: "token" }),
        svg(
          "text",
          { x: String(x + 10), y: String(y - 8), class: "token-count" },
          String(tokens),
        ),
      );
    }
    root.append(group);
  }

  for (const transition of detail.net.transitions) {
    const { x, y } = at(transition.id);
    const enabled = enabledIds.has(transition.id);
    const group = svg("g", {
      class: `transition${enabled ? " enabled" : ""}`,
      "data-transition": transition.id,
      "data-enabled": String(enabled),
      role: "button",
      tabindex: "0",
    });
    group.append(
      svg("rect", {
        x: String(x - TRANSITION_W / 2),
        y: String(y - TRANSITION_H / 2),
        width: String(TRANSITION_W),
        height: String(TRANSITION_H),
      }),
      svg("title", {}, `${transition.id}: ${transition.label}`),
      svg(
        "text",
        {
          x: String(x),
          y: String(y - TRANSITION_H / 2 - 8),
          class: "node-id",
        },
        transition.id,
      ),
    );
    group.addEventListener("click", () => onTransitionClick(transition.id));
    root.append(group);
  }

  container.replaceChildren(root);
}

export function renderConsequences(
  container: HTMLElement,
  detail: ModelDetail,
  catalog: ModelSummary[],
  closure: number[],
  server: SessionState | null,
): void {
  const satisfied = new Set(server?.satisfiedPostconditions ?? []);
  const labels = new Map(detail.net.places.map((p) => [p.id, p.label]));
  const names = new Map(catalog.map((m) => [m.id, m.name]));

  const postList = el("ul", { class: "postcondition-list" });
  for (const place of detail.postconditions) {
    postList.append(
      el(
        "li",
        {
          class: `postcondition${satisfied.has(place) ? " lit" : ""}`,
          "data-postcondition": place,
          "data-satisfied": String(satisfied.has(place)),
        },
        el("span", { class: "place-id" }, place),
        el("span", { class: "place-label" }, labels.get(place) ?? ""),
      ),
    );
  }

  const strideChips = el("div", { class: "stride-chips" });
  for (const letter of detail.stride) {
    strideChips.append(el("span", { class: "chip stride-chip" }, letter));
  }

  const influence = el("ul", { class: "influence-list" });
  for (const attack of closure) {
    influence.append(
      el(
        "li",
        { class: "influenced-attack", "data-influenced": String(attack) },
        `${attack} (${names.get(attack) ?? "?"})`,
      ),
    );
  }
  if (closure.length === 0) {
    influence.append(el("li", { class: "influenced-none" }, "(none)"));
  }

  container.replaceChildren(
    el("h2", {}, "Consequences"),
    el("h3", {}, "Outcomes"),
    postList,
    el("h3", {}, "STRIDE threats"),
    strideChips,
    el("h3", {}, "Enables (transitively)"),
    influence,
  );
}

export interface ControlHandlers {
  onReset: () => void;
  onUndo: () => void;
  onRefresh: () => void;
}

export function renderControls(
  container: HTMLElement,
  server: SessionState | null,
  handlers: ControlHandlers,
): void {
  if (server === null) {
    container.replaceChildren();
    return;
  }
  const button = (action: string, text: string, onClick: () => void) => {
    const node = el(
      "button",
      { type: "button", "data-action": action },
      text,
    );
    node.addEventListener("click", onClick);
    return node;
  };
  container.replaceChildren(
    el(
      "div",
      { class: "session-buttons" },
      button("reset", "Reset", handlers.onReset),
      button("undo", "Undo", handlers.onUndo),
      button("refresh", "Refresh", handlers.onRefresh),
    ),
    el(
      "p",
      { class: "marking-line" },
      "marking: ",
      el("span", { "data-readout": "marking" }, markingText(server.marking)),
    ),
    el(
      "p",
      { class: "history-line" },
      "history: ",
      el(
        "span",
        { "data-readout": "history" },
        server.history.length > 0 ? server.history.join(" ") : "(empty)",
      ),
    ),
  );
}

export function renderStatus(
  container: HTMLElement,
  pending: boolean,
  error: string | null,
  notice: string | null,
): void {
  const children: HTMLElement[] = [];
  if (pending) {
    children.push(
      el("span", { class: "pending", "data-status": "pending" }, "working…"),
    );
  }
  if (error !== null) {
    children.push(
      el("span", { class: "error", "data-status": "error" }, error),
    );
  }
  if (notice !== null) {
    children.push(
      el("span", { class: "notice", "data-status": "notice" }, notice),
    );
  }
  container.replaceChildren(...children);
}
