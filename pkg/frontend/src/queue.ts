// Local retry queue: answers survive network failures and page reloads, and
// are flushed when connectivity returns. No judgment is ever silently lost.

import type { AssessmentRecord } from './types.js'

export interface KeyValueStorage {
  getItem(key: string): string | null
  setItem(key: string, value: string): void
  removeItem(key: string): void
}

export class RetryQueue {
  private storage: KeyValueStorage
  private key: string

  constructor(storage: KeyValueStorage, sessionId: string, annotatorId: string) {
    this.storage = storage
    this.key = `zhnp-queue:${sessionId}:${annotatorId}`
  }

  pending(): AssessmentRecord[] {
    const raw = this.storage.getItem(this.key)
    if (!raw) return []
    try {
      return JSON.parse(raw) as AssessmentRecord[]
    } catch {
      return []
    }
  }

  enqueue(record: AssessmentRecord): void {
    const queue = this.pending()
    if (!queue.some((r) => r.item_id === record.item_id)) {
      queue.push(record)
    }
    this.storage.setItem(this.key, JSON.stringify(queue))
  }

  private save(queue: AssessmentRecord[]): void {
    if (queue.length === 0) {
      this.storage.removeItem(this.key)
    } else {
      this.storage.setItem(this.key, JSON.stringify(queue))
    }
  }

  /**
   * Try to post every queued record. Conflicts (already stored server-side)
   * count as delivered; any other failure keeps the record queued.
   */
  async flush(
    post: (record: AssessmentRecord) => Promise<void>,
    isConflict: (error: unknown) => boolean,
  ): Promise<number> {
    const queue = this.pending()
    const remaining: AssessmentRecord[] = []
    let delivered = 0
    for (const record of queue) {
      try {
        await post(record)
        delivered += 1
      } catch (error) {
        if (isConflict(error)) {
          delivered += 1
        } else {
          remaining.push(record)
        }
      }
    }
    this.save(remaining)
    return delivered
  }
}
