/** Typed client for the generation service's JSON-over-HTTP contract. */

export interface CheckpointInfo {
  step: number;
  config_hash: string;
  latent_dim: number;
}

export interface Annotation {
  analyzable: boolean;
  prefixed: boolean;
  prefix_shape: string;
  prefix_vowel_front: boolean | null;
  v2_front: boolean | null;
  c1_voiced: boolean | null;
  c1_manner: string | null;
  harmonious: boolean | null;
  confidence: Record<string, number>;
}

export interface SpectrogramGrid {
  values: number[][]; // freqs x frames, linear magnitude
  times: number[];
  freqs: number[];
}

export interface GenerateResponse {
  step: number;
  config_hash: string;
  z: number[];
  sample_rate: number;
  audio_wav_base64: string;
  annotation: Annotation;
  spectrogram: SpectrogramGrid;
  waveform_preview: [number, number][];
}

export interface ProbeEntry {
  top_variable?: number | null;
  direction?: number;
  drop_ratio?: number;
  significant_drop?: boolean;
  ranking?: number[];
  sorted_magnitudes?: number[];
  coefficients?: number[];
  skipped?: string;
}

export interface ProbeReport {
  responses: Record<string, ProbeEntry>;
  extrapolation?: Record<string, unknown>;
}

export interface GenerateRequest {
  step?: number;
  z?: number[];
  seed?: number;
  overrides?: Record<string, number>;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  constructor(
    private base: string = "",
    private fetchImpl: FetchLike = (...a) => fetch(...a),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const res = await this.fetchImpl(`${this.base}${path}`);
    if (!res.ok) throw new ServiceError(res.status, await safeDetail(res));
    return (await res.json()) as T;
  }

  checkpoints(): Promise<CheckpointInfo[]> {
    return this.get<CheckpointInfo[]>("/checkpoints");
  }

  probes(): Promise<ProbeReport> {
    return this.get<ProbeReport>("/probes");
  }

  async generate(req: GenerateRequest): Promise<GenerateResponse> {
    const res = await this.fetchImpl(`${this.base}/generate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
    if (!res.ok) throw new ServiceError(res.status, await safeDetail(res));
    return (await res.json()) as GenerateResponse;
  }
}

export class ServiceError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(`service error ${status}: ${detail}`);
  }
}

async function safeDetail(res: Response): Promise<string> {
  try {
    const body = await res.json();
    return typeof body?.detail === "string" ? body.detail : JSON.stringify(body);
  } catch {
    return res.statusText;
  }
}
