/** Conformance against the real HTTP service.
 *
 * A live server is spawned for the whole file; the explorer under test
 * talks to it over actual sockets. After every scripted interaction the
 * rendered marking is compared with a fresh GET of the session state —
 * the server is the authority and the UI must agree with it exactly.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { Explorer } from "../src/controller";
import { markingText } from "../src/render";
import type { SessionState } from "../src/types";

const PORT = 18741 + (process.pid % 97);
const BASE = `http://127.0.0.1:${PORT}`;

const realFetch: typeof fetch = fetch;

let server: ChildProcess;

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const response = await realFetch(`${BASE}/api/models`);
      if (response.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      throw new Error(`service did not come up on ${BASE}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
}

beforeAll(async () => {
  server = spawn(
    "python3",
    [
      "-m",
      "uvicorn",
      "attacknets.service:app",
      "--host",
      "127.0.0.1",
      "--port",
      String(PORT),
      "--log-level",
      "warning",
    ],
    { stdio: ["ignore", "inherit", "inherit"] },
  );
  await waitForService();
});

afterAll(async () => {
  server.kill("SIGTERM");
  await new Promise((resolve) => {
    server.once("exit", resolve);
    setTimeout(resolve, 5_000);
  });
});

function makeExplorer() {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app")!;
  const api = new ApiClient(BASE, (input, init) => realFetch(input, init));
  return { root, api, explorer: new Explorer(root, api) };
}

function q(root: HTMLElement, selector: string): HTMLElement {
  const node = root.querySelector(selector);
  expect(node, selector).not.toBeNull();
  return node as HTMLElement;
}

function renderedMarking(root: HTMLElement): string {
  return q(root, '[data-readout="marking"]').textContent ?? "";
}

async function getState(sessionId: string): Promise<SessionState> {
  const response = await realFetch(`${BASE}/api/sessions/${sessionId}`);
  expect(response.status).toBe(200);
  return (await response.json()) as SessionState;
}

/** The acceptance check proper: the DOM shows what the server holds. */
async function expectConformance(root: HTMLElement, sessionId: string) {
  const state = await getState(sessionId);
  expect(renderedMarking(root)).toBe(markingText(state.marking));
  return state;
}

describe("against the live service", () => {
  it("loads the real catalog: 13 attacks, 7 quantum badges", async () => {
    const { explorer, root } = makeExplorer();
    await explorer.start();
    expect(root.querySelectorAll(".attack-entry").length).toBe(13);
    expect(root.querySelectorAll(".badge.quantum").length).toBe(7);
    expect(explorer.viewState.error).toBeNull();
  });

  it("runs the full majority-attack script and stays in lockstep with the server", async () => {
    const { explorer, root } = makeExplorer();
    await explorer.start();
    await explorer.selectAttack(1);

    // Real gating data: the quantum alternative is locked until toggled.
    const gated = q(root, '[data-choice="P1a2"]') as HTMLInputElement;
    expect(gated.disabled).toBe(true);
    expect(explorer.viewState.chosen).toEqual(["P1a1", "P1b", "P1c", "P2"]);

    await explorer.startSession();
    expect(explorer.viewState.error).toBeNull();
    const sessionId = explorer.viewState.sessionId!;
    expect(sessionId.length).toBeGreaterThanOrEqual(20);
    await expectConformance(root, sessionId);

    for (const transition of ["T1", "T2", "T3"]) {
      q(root, `[data-transition="${transition}"]`).dispatchEvent(
        new MouseEvent("click", { bubbles: true }),
      );
      await new Promise((resolve) => setTimeout(resolve, 0));
      // one in-flight request: wait for it to settle
      while (explorer.viewState.pending) {
        await new Promise((resolve) => setTimeout(resolve, 10));
      }
      expect(explorer.viewState.error).toBeNull();
      await expectConformance(root, sessionId);
    }

    const final = await getState(sessionId);
    expect(final.history).toEqual(["T1", "T2", "T3"]);
    expect(final.satisfiedPostconditions).toEqual([
      "P3",
      "P4",
      "P5",
      "P6",
      "P7",
    ]);
    for (const place of final.satisfiedPostconditions) {
      expect(
        q(root, `[data-postcondition="${place}"]`).getAttribute(
          "data-satisfied",
        ),
      ).toBe("true");
    }
    expect(q(root, '[data-influenced="6"]').textContent).toBe(
      "6 (Double Spending)",
    );
    await explorer.endSession();
  });

  it("leaves the server untouched when a disabled transition is clicked", async () => {
    const { explorer, root } = makeExplorer();
    await explorer.start();
    await explorer.selectAttack(1);
    await explorer.startSession();
    const sessionId = explorer.viewState.sessionId!;
    const before = await getState(sessionId);

    q(root, '[data-transition="T3"]').dispatchEvent(
      new MouseEvent("click", { bubbles: true }),
    );
    await new Promise((resolve) => setTimeout(resolve, 50));

    const after = await getState(sessionId);
    expect(after.marking).toEqual(before.marking);
    expect(after.history).toEqual(before.history);
    expect(q(root, '[data-status="notice"]').textContent).toContain(
      "T3 is not enabled",
    );
    expect(renderedMarking(root)).toBe(markingText(after.marking));
    await explorer.endSession();
  });

  it("capability gating prevents CAPABILITY_MISSING round trips by construction", async () => {
    const { explorer } = makeExplorer();
    await explorer.start();
    // Walk every attack with the narrowest profile; the client must
    // always choose a seedable subset the server accepts.
    for (let attack = 1; attack <= 13; attack += 1) {
      await explorer.selectAttack(attack);
      await explorer.startSession();
      expect(explorer.viewState.error).toBeNull();
      expect(explorer.viewState.sessionId).not.toBeNull();
      await explorer.endSession();
    }
  });

  it("quantum toggle unlocks the quantum alternative against real data", async () => {
    const { explorer, root } = makeExplorer();
    await explorer.start();
    await explorer.selectAttack(1);
    explorer.toggleCapability("quantum");
    const choice = q(root, '[data-choice="P1a2"]') as HTMLInputElement;
    expect(choice.disabled).toBe(false);
    expect(choice.checked).toBe(true);
    await explorer.startSession();
    expect(explorer.viewState.error).toBeNull();
    const state = await getState(explorer.viewState.sessionId!);
    expect(state.chosen).toContain("P1a2");
    expect(state.marking["P1a2"]).toBe(1);
    await explorer.endSession();
  });

  it("undo and reset round-trip through the real endpoints", async () => {
    const { explorer, root } = makeExplorer();
    await explorer.start();
    await explorer.selectAttack(1);
    await explorer.startSession();
    const sessionId = explorer.viewState.sessionId!;

    await explorer.fireTransition("T1");
    await explorer.fireTransition("T2");
    await explorer.undo();
    let state = await expectConformance(root, sessionId);
    expect(state.history).toEqual(["T1"]);

    await explorer.reset();
    state = await expectConformance(root, sessionId);
    expect(state.history).toEqual([]);
    expect(markingText(state.marking)).toBe("P1a1=1 P1b=1 P1c=1 P2=1");
    await explorer.endSession();
  });

  it("surfaces real error envelopes verbatim", async () => {
    const { explorer, root } = makeExplorer();
    await explorer.start();
    await explorer.selectAttack(1);
    await explorer.startSession();
    const sessionId = explorer.viewState.sessionId!;
    await realFetch(`${BASE}/api/sessions/${sessionId}`, {
      method: "DELETE",
    });
    await explorer.fireTransition("T1");
    const error = q(root, '[data-status="error"]').textContent ?? "";
    expect(error.startsWith("SESSION_NOT_FOUND: ")).toBe(true);
    expect(error).toContain(sessionId);
  });

  it("stays in lockstep through a deterministic random walk on another attack", async () => {
    const { explorer, root } = makeExplorer();
    await explorer.start();
    await explorer.selectAttack(4); // Eclipse: groups, read arcs, internals
    explorer.toggleCapability("quantum");
    explorer.toggleCapability("physical");
    await explorer.startSession();
    const sessionId = explorer.viewState.sessionId!;

    let seed = 0xc0ffee;
    const next = () => {
      seed = (seed * 1103515245 + 12345) & 0x7fffffff;
      return seed;
    };
    const transitions = ["T_eclipse", "T_monopolise", "T_monopolise_b"];
    for (let step = 0; step < 18; step += 1) {
      const roll = next() % 10;
      if (roll < 6) {
        const t = transitions[next() % transitions.length]!;
        await explorer.fireTransition(t); // may be a disabled no-op
      } else if (roll < 8) {
        await explorer.undo();
      } else if (roll === 8) {
        await explorer.reset();
      } else {
        await explorer.refresh();
      }
      const state = await expectConformance(root, sessionId);
      expect(explorer.viewState.server!.history).toEqual(state.history);
    }
    await explorer.endSession();
  });
});
