/** Capability gating for the setup panel.
 *
 * The rules mirror the server's seeding checks exactly, so a choice the
 * UI permits can never bounce with CAPABILITY_MISSING: a precondition
 * place is selectable only when it demands no capability or one the
 * current profile holds.
 */

import type { CapabilityName, ModelDetail } from "./types";

/** place id -> null when selectable, otherwise the human reason why not. */
export function placeGates(
  detail: ModelDetail,
  profile: ReadonlySet<CapabilityName>,
): Map<string, string | null> {
  const gates = new Map<string, string | null>();
  for (const pre of detail.preconditions) {
    if (pre.capability === null || profile.has(pre.capability)) {
      gates.set(pre.place, null);
    } else {
      gates.set(pre.place, `requires the ${pre.capability} capability`);
    }
  }
  return gates;
}

/** Every selectable precondition place, the default session seed. */
export function defaultChosen(
  detail: ModelDetail,
  profile: ReadonlySet<CapabilityName>,
): Set<string> {
  const chosen = new Set<string>();
  for (const [place, reason] of placeGates(detail, profile)) {
    if (reason === null) {
      chosen.add(place);
    }
  }
  return chosen;
}

/** Drop choices that a narrowed profile no longer permits. */
export function pruneChosen(
  chosen: ReadonlySet<string>,
  gates: ReadonlyMap<string, string | null>,
): Set<string> {
  const pruned = new Set<string>();
  for (const place of chosen) {
    if (gates.get(place) === null) {
      pruned.add(place);
    }
  }
  return pruned;
}

/** Input places whose tokens fall short of a transition's arc weights. */
export function blockingPlaces(
  detail: ModelDetail,
  marking: Record<string, number>,
  transition: string,
): string[] {
  const short: string[] = [];
  for (const arc of detail.net.arcs) {
    if (arc.target !== transition) {
      continue;
    }
    if ((marking[arc.source] ?? 0) < arc.weight) {
      short.push(arc.source);
    }
  }
  return short.sort();
}
