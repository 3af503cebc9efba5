/** Explorer session state: coordinate overrides, append-only history, and
 * export of a manual sweep as a pipeline-schema trajectory.
 *
 * The session never computes acoustics or labels itself; every annotation in
 * the history arrived verbatim from the service. One generation request is in
 * flight at a time; later requests queue behind it.
 */

import {
  Annotation,
  GenerateRequest,
  GenerateResponse,
  ServiceClient,
} from "./api.js";

export interface HistoryEntry {
  overrides: Record<string, number>;
  seed: number;
  step: number;
  annotation: Annotation;
}

export interface TrajectoryExport {
  set_id: number;
  swept_index: number;
  fixed: Record<string, number>;
  values: number[];
  records: Record<string, unknown>[];
}

export class ExplorerSession {
  overrides: Map<number, number> = new Map();
  baseSeed = 0;
  checkpointStep: number | undefined = undefined;
  readonly history: ReadonlyArray<HistoryEntry>;

  private historyArr: HistoryEntry[] = [];
  private inflight: Promise<unknown> = Promise.resolve();

  constructor(private client: ServiceClient) {
    this.history = this.historyArr;
  }

  setOverride(index: number, value: number): void {
    if (!Number.isFinite(value)) throw new Error(`override ${index} must be finite`);
    this.overrides.set(index, value);
  }

  clearOverride(index: number): void {
    this.overrides.delete(index);
  }

  request(): GenerateRequest {
    const overrides: Record<string, number> = {};
    for (const [k, v] of this.overrides) overrides[String(k)] = v;
    return {
      step: this.checkpointStep,
      seed: this.baseSeed,
      overrides,
    };
  }

  /** One service round trip; history grows only on success. */
  generate(): Promise<GenerateResponse> {
    const run = this.inflight.then(
      () => this.generateNow(),
      () => this.generateNow(),
    );
    this.inflight = run;
    return run;
  }

  private async generateNow(): Promise<GenerateResponse> {
    const req = this.request();
    const res = await this.client.generate(req);
    this.historyArr.push({
      overrides: { ...req.overrides },
      seed: req.seed ?? 0,
      step: res.step,
      annotation: res.annotation,
    });
    return res;
  }

  /** Export the last n history entries as a pipeline-schema trajectory.
   *
   * Requires a clean manual sweep: exactly one override index varies while
   * all other overrides and the seed stay constant.
   */
  exportTrajectory(n?: number, setId = 1): TrajectoryExport {
    const entries = n ? this.historyArr.slice(-n) : [...this.historyArr];
    if (entries.length < 2) throw new Error("need at least two history entries");
    const keys = new Set<string>();
    for (const e of entries) Object.keys(e.overrides).forEach((k) => keys.add(k));
    const varying: string[] = [];
    const fixed: Record<string, number> = {};
    for (const k of keys) {
      const vals = entries.map((e) => e.overrides[k]);
      if (vals.some((v) => v === undefined)) {
        throw new Error(`override ${k} is missing from part of the sweep`);
      }
      if (new Set(vals).size > 1) varying.push(k);
      else fixed[k] = vals[0];
    }
    if (varying.length !== 1) {
      throw new Error(
        `a sweep varies exactly one coordinate; found [${varying.join(", ")}]`,
      );
    }
    if (new Set(entries.map((e) => e.seed)).size > 1) {
      throw new Error("seed changed during the sweep");
    }
    const idx = varying[0];
    return {
      set_id: setId,
      swept_index: Number(idx),
      fixed,
      values: entries.map((e) => e.overrides[idx]),
      records: entries.map((e) => ({ ...e.annotation })),
    };
  }
}
