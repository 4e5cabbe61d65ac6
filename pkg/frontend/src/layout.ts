/** Deterministic layered layout for a net.
 *
 * Nodes are placed on columns by longest-path depth from the nodes with
 * no incoming arcs, so precondition places sit on the left, transitions
 * in the middle and outcome places on the right; outcome places are
 * aligned on a single final column. Within a column, nodes stack in
 * identifier order. The same net always yields the same positions.
 */

import type { NetInfo } from "./types";

export interface Position {
  x: number;
  y: number;
}

export interface Layout {
  positions: Map<string, Position>;
  width: number;
  height: number;
}

export const H_GAP = 170;
export const V_GAP = 72;
export const MARGIN = 56;

export function layeredLayout(net: NetInfo): Layout {
  const nodes = [
    ...net.places.map((p) => p.id),
    ...net.transitions.map((t) => t.id),
  ].sort();
  const incoming = new Map<string, string[]>(nodes.map((n) => [n, []]));
  for (const arc of net.arcs) {
    incoming.get(arc.target)?.push(arc.source);
  }

  // Longest path from the sources; relaxation is capped at the node
  // count so a (malformed) cyclic net still terminates deterministically.
  const depth = new Map<string, number>(nodes.map((n) => [n, 0]));
  for (let pass = 0; pass < nodes.length; pass += 1) {
    let changed = false;
    for (const node of nodes) {
      const sources = incoming.get(node) ?? [];
      if (sources.length === 0) {
        continue;
      }
      const want = Math.max(...sources.map((s) => depth.get(s) ?? 0)) + 1;
      if (want > (depth.get(node) ?? 0)) {
        depth.set(node, want);
        changed = true;
      }
    }
    if (!changed) {
      break;
    }
  }

  // Align every outcome place on one final column.
  const posts = net.places.filter((p) => p.kind === "post").map((p) => p.id);
  if (posts.length > 0) {
    const last = Math.max(...posts.map((p) => depth.get(p) ?? 0));
    for (const p of posts) {
      depth.set(p, last);
    }
  }

  const columns = new Map<number, string[]>();
  for (const node of nodes) {
    const d = depth.get(node) ?? 0;
    const column = columns.get(d) ?? [];
    column.push(node);
    columns.set(d, column);
  }

  const positions = new Map<string, Position>();
  let maxRows = 1;
  for (const [d, members] of columns) {
    members.sort();
    maxRows = Math.max(maxRows, members.length);
    members.forEach((node, row) => {
      positions.set(node, { x: MARGIN + d * H_GAP, y: MARGIN + row * V_GAP });
    });
  }
  const maxDepth = Math.max(...nodes.map((n) => depth.get(n) ?? 0));
  return {
    positions,
    width: MARGIN * 2 + maxDepth * H_GAP,
    height: MARGIN * 2 + (maxRows - 1) * V_GAP,
  };
}
