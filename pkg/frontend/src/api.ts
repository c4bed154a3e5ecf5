/** Typed API client; one in-flight request per channel (latest wins). */

import type {
  ClusterPayload,
  CompositionMeta,
  ComposerEntry,
  DistributionPayload,
  FeatureDescriptor,
  Grouping,
  MatrixRow,
  Point,
  PreviewPayload,
  ProjectionPayload,
  UseCasePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

/** Raised internally when a newer request superseded this one. */
export class Superseded extends Error {}

type FetchLike = typeof fetch;

export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(
    private base: string = "",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(
    channel: string | null,
    path: string,
    init?: RequestInit,
  ): Promise<T> {
    let signal: AbortSignal | undefined;
    if (channel !== null) {
      this.inflight.get(channel)?.abort();
      const controller = new AbortController();
      this.inflight.set(channel, controller);
      signal = controller.signal;
    }
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, { ...init, signal });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        throw new Superseded(path);
      }
      throw err;
    }
    if (!response.ok) {
      const body = await response.json().catch(() => null);
      throw new ApiError(
        response.status,
        body?.code ?? "error",
        body?.message ?? response.statusText,
      );
    }
    return response.json() as Promise<T>;
  }

  private post<T>(channel: string | null, path: string, body: unknown): Promise<T> {
    return this.request<T>(channel, path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  compositions(params: Record<string, string> = {}): Promise<{
    total: number;
    items: CompositionMeta[];
  }> {
    const query = new URLSearchParams(params).toString();
    return this.request(null, `/api/compositions${query ? "?" + query : ""}`);
  }

  featureCatalog(): Promise<{ features: FeatureDescriptor[] }> {
    return this.request(null, "/api/features/catalog");
  }

  featureRows(ids: string[], features: string[]): Promise<{ rows: MatrixRow[] }> {
    const query = new URLSearchParams({
      ids: ids.join(","),
      features: features.join(","),
    });
    return this.request("matrix", `/api/features?${query}`);
  }

  projection(body: {
    ids: string[];
    features: string[];
    grouping: Grouping;
  }): Promise<ProjectionPayload> {
    return this.post("projection", "/api/projection", body);
  }

  clusters(coords: Point[], eps: number): Promise<ClusterPayload> {
    return this.post("clusters", "/api/clusters", { coords, eps });
  }

  distribution(feature: string, ids: string[]): Promise<DistributionPayload> {
    const query = new URLSearchParams({ feature, ids: ids.join(",") });
    return this.request("distribution", `/api/distribution?${query}`);
  }

  composers(): Promise<{ items: ComposerEntry[] }> {
    return this.request(null, "/api/composers");
  }

  types(): Promise<{ types: string[] }> {
    return this.request(null, "/api/types");
  }

  preview(id: string): Promise<PreviewPayload> {
    return this.request("preview", `/api/score/${id}/preview`);
  }

  useCases(): Promise<{ items: UseCasePayload[] }> {
    return this.request(null, "/api/usecases");
  }

  useCase(name: string): Promise<UseCasePayload> {
    return this.request(null, `/api/usecases/${encodeURIComponent(name)}`);
  }

  saveUseCase(body: UseCasePayload): Promise<UseCasePayload> {
    return this.post(null, "/api/usecases", body);
  }

  async upload(file: File): Promise<CompositionMeta> {
    const form = new FormData();
    form.append("file", file);
    const response = await this.fetchImpl(this.base + "/api/upload", {
      method: "POST",
      body: form,
    });
    if (!response.ok) {
      const body = await response.json().catch(() => null);
      throw new ApiError(
        response.status,
        body?.code ?? "error",
        body?.message ?? response.statusText,
      );
    }
    return response.json();
  }
}
